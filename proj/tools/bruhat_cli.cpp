// Command-line front end for the bruhat library.
//
// Exit codes: 0 success, 2 usage or input error, 3 budget exceeded,
// 4 verification failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bruhat/affine.hpp"
#include "bruhat/error.hpp"
#include "bruhat/exec.hpp"
#include "bruhat/flip_engine.hpp"
#include "bruhat/ladder.hpp"
#include "bruhat/order.hpp"
#include "bruhat/packets.hpp"
#include "bruhat/poset.hpp"
#include "bruhat/realizability.hpp"
#include "bruhat/report.hpp"
#include "bruhat/words.hpp"

using namespace bruhat;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitVerify = 4;

struct RunConfig {
  std::string format = "text";
  std::string output;
  std::uint64_t seed = 0;
  int threads = 0;
  std::size_t max_nodes = 0;
  std::size_t max_class = kDefaultClassCap;
  std::size_t max_chains = 100'000;
  std::size_t max_orders = 1'000'000;

  BuildOptions build() const {
    BuildOptions o;
    if (max_nodes) o.max_nodes = max_nodes;
    o.exec = Exec::parallel;
    return o;
  }
};

/// Thrown by a command to request a specific exit status after its output.
struct ExitStatus {
  int code;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) fail(ErrorKind::invalid_arguments, "cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

// ---- parsing helpers ----

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\n{}");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\n{}");
  return s.substr(b, e - b + 1);
}

/// "12,13,23", "{12 13 23}", "1,2;1,3" or a JSON array of arrays.
KSetFamily parse_family(const std::string& text, int n, int k) {
  KSetFamily out(n, k);
  const std::string body = trim(text);
  if (body.rfind("[[", 0) == 0 || body == "[]") {
    Json doc;
    try {
      doc = Json::parse(body);
    } catch (const std::exception& e) {
      fail(ErrorKind::parse_error, std::string("bad JSON set: ") + e.what());
    }
    for (const auto& item : doc) {
      std::vector<int> elems;
      for (const auto& v : item) elems.push_back(v.get<int>());
      KSet x(n, elems);
      if (x.size() != k) fail(ErrorKind::parse_error, "entry " + x.to_string() + " has wrong size");
      out.insert(x);
    }
    return out;
  }
  std::vector<std::string> parts;
  std::string cur;
  const bool semi = body.find(';') != std::string::npos;
  for (char c : body) {
    const bool sep = semi ? c == ';' : (c == ',' || std::isspace(static_cast<unsigned char>(c)));
    if (sep) {
      if (!trim(cur).empty()) parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) parts.push_back(trim(cur));
  for (const auto& p : parts) {
    const KSet x = parse_kset(p, n);
    if (x.size() != k) fail(ErrorKind::parse_error, "entry " + p + " has wrong size");
    out.insert(x);
  }
  return out;
}

/// Infers n from the largest letter when not given.
int infer_word_n(const std::string& text) {
  int top = 0;
  std::string digits;
  bool tokens = false;
  for (char c : text) {
    if (c == 's' || c == 'S') tokens = true;
  }
  // "s1 s2" tokens carry numbers; bare letters s..z map to 1..8.
  bool numbered = false;
  for (std::size_t i = 0; i + 1 < text.size(); ++i) {
    if (text[i] == 's' && std::isdigit(static_cast<unsigned char>(text[i + 1]))) numbered = true;
  }
  if (tokens && numbered) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] != 's') continue;
      int v = 0;
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        v = v * 10 + (text[j] - '0');
        ++j;
      }
      top = std::max(top, v);
    }
  } else {
    for (char c : text) {
      if (std::isdigit(static_cast<unsigned char>(c))) top = std::max(top, c - '0');
      if (c >= 's' && c <= 'z') top = std::max(top, c - 's' + 1);
    }
  }
  return std::max(2, top + 1);
}

Word read_word(const std::string& text, int n) {
  return parse_word(text, n > 0 ? n : infer_word_n(text));
}

// ---- JSON helpers ----

Json to_json(const KSet& x) { return x.elements(); }

Json to_json(const KSetFamily& f) {
  Json out = Json::array();
  for (const auto& x : f.members()) out.push_back(to_json(x));
  return out;
}

Json to_json(const KOrder& rho) {
  Json out = Json::array();
  for (const auto& x : rho) out.push_back(to_json(x));
  return out;
}

Json header(const std::string& command) {
  Json doc;
  doc["schema"] = kSchema;
  doc["command"] = command;
  return doc;
}

std::string text_family(const KSetFamily& f) { return f.to_string(); }

Json poset_summary(const BruhatPoset& p) {
  Json doc;
  doc["nodes"] = p.nodes().size();
  doc["edges"] = p.edges().size();
  doc["max_rank"] = p.max_rank();
  std::vector<std::size_t> sizes(p.max_rank() + 1, 0);
  for (const auto& node : p.nodes()) ++sizes[node.rank];
  doc["rank_sizes"] = sizes;
  Json src = Json::array();
  for (std::size_t s : p.sources()) src.push_back(to_json(p.nodes()[s].inv.members()));
  Json snk = Json::array();
  for (std::size_t s : p.sinks()) snk.push_back(to_json(p.nodes()[s].inv.members()));
  doc["sources"] = src;
  doc["sinks"] = snk;
  return doc;
}

std::string poset_summary_text(const std::string& title, const BruhatPoset& p) {
  std::ostringstream out;
  out << title << ": " << p.nodes().size() << " nodes, " << p.edges().size() << " edges, ranks 0.."
      << p.max_rank() << "\n";
  std::vector<std::size_t> sizes(p.max_rank() + 1, 0);
  for (const auto& node : p.nodes()) ++sizes[node.rank];
  out << "  rank sizes:";
  for (std::size_t s : sizes) out << ' ' << s;
  out << "\n";
  for (std::size_t s : p.sources()) out << "  min Inv " << text_family(p.nodes()[s].inv.members()) << "\n";
  for (std::size_t s : p.sinks()) out << "  max Inv " << text_family(p.nodes()[s].inv.members()) << "\n";
  return out.str();
}

void emit_poset(const RunConfig& cfg, const std::string& command, const std::string& title,
                const BruhatPoset& p) {
  Output out(cfg.output);
  if (cfg.format == "dot") {
    out.stream() << to_dot(p);
  } else if (cfg.format == "json") {
    out.stream() << to_json(p) << "\n";
  } else {
    out.stream() << poset_summary_text(title, p);
  }
  (void)command;
}

void emit_report(const RunConfig& cfg, const Report& report) {
  Output out(cfg.output);
  if (cfg.format == "json") {
    out.stream() << report.to_json() << "\n";
  } else {
    out.stream() << report.to_text();
  }
  if (!report.passed()) throw ExitStatus{kExitVerify};
}

void emit_json_or_text(const RunConfig& cfg, const Json& doc, const std::string& text) {
  Output out(cfg.output);
  if (cfg.format == "json") {
    out.stream() << doc.dump(2) << "\n";
  } else {
    out.stream() << text;
  }
}

RealizableSet target_set(const std::string& set_text, const std::string& word_text, int n, int k) {
  if (!word_text.empty()) {
    if (k != 2) fail(ErrorKind::invalid_arguments, "--word yields a 2-set; use --k 2");
    return word_inversions(read_word(word_text, n));
  }
  if (n <= 0) fail(ErrorKind::invalid_arguments, "--set needs --n");
  const KSetFamily f = parse_family(set_text, n, k);
  const auto check = check_realizable(f);
  if (!check) {
    fail(ErrorKind::not_realizable, "set is not realizable: packet " +
                                        check.generator->to_string() + " pattern " + check.pattern);
  }
  return RealizableSet(f);
}

// ---- commands ----

void cmd_packets(const RunConfig& cfg, int n, int k, const std::string& generator) {
  std::vector<KSet> gens;
  if (!generator.empty()) {
    gens.push_back(parse_kset(generator, n));
  } else {
    gens = enumerate_ksets(n, k + 1);
  }
  Json doc = header("packets");
  doc["n"] = n;
  doc["k"] = k;
  Json list = Json::array();
  std::string text;
  for (const auto& g : gens) {
    const Packet p = packet(g);
    Json members = Json::array();
    text += g.to_string() + ":";
    for (std::size_t i = 0; i < p.members.size(); ++i) {
      members.push_back(to_json(p.members[i]));
      text += (i ? " < " : " ") + p.members[i].to_string();
    }
    text += "\n";
    list.push_back({{"generator", to_json(g)}, {"members", members}});
  }
  doc["packets"] = list;
  emit_json_or_text(cfg, doc, text);
}

void cmd_check_order(const RunConfig& cfg, const KOrder& rho) {
  const auto check = check_order(rho);
  Json doc = header("check-order");
  doc["order"] = rho.to_string();
  doc["admissible"] = check.admissible;
  Json violations = Json::array();
  for (const auto& v : check.violations) violations.push_back(to_json(v));
  doc["violations"] = violations;
  std::string text = rho.to_string() + ": " + (check.admissible ? "admissible" : "not admissible");
  if (check.admissible) {
    const auto inv = inversion_set(rho);
    doc["inversions"] = to_json(inv.members());
    text += ", Inv " + inv.to_string();
  } else {
    text += ", violating packets";
    for (const auto& v : check.violations) text += " " + v.to_string();
  }
  emit_json_or_text(cfg, doc, text + "\n");
  if (!check.admissible) throw ExitStatus{kExitVerify};
}

void cmd_inv(const RunConfig& cfg, int n, const std::string& order_text, const std::string& word_text) {
  Json doc = header("inv");
  std::string text;
  if (!word_text.empty()) {
    const Word w = read_word(word_text, n);
    const auto inv = word_inversions(w);
    doc["word"] = w.to_string();
    doc["n"] = w.n;
    doc["permutation"] = word_permutation(w);
    doc["reduced"] = is_reduced(w);
    doc["inversions"] = to_json(inv.members());
    text = "Inv(" + w.to_string() + ") = " + inv.members().to_string() + "\n";
  } else {
    if (n <= 0) fail(ErrorKind::invalid_arguments, "--order needs --n");
    const KOrder rho = parse_order(order_text, n);
    const auto inv = inversion_set(rho);
    doc["order"] = rho.to_string();
    doc["inversions"] = to_json(inv.members());
    text = "Inv(" + rho.to_string() + ") = " + inv.to_string() + "\n";
  }
  emit_json_or_text(cfg, doc, text);
}

void cmd_flips(const RunConfig& cfg, const KOrder& rho, bool down) {
  const auto flips = down ? find_flips_down(rho, Exec::parallel) : find_flips(rho, Exec::parallel);
  Json doc = header("flips");
  doc["order"] = rho.to_string();
  doc["direction"] = down ? "down" : "up";
  Json list = Json::array();
  std::string text = rho.to_string() + ": " + std::to_string(flips.size()) + " flip(s)\n";
  for (const auto& f : flips) {
    list.push_back({{"generator", to_json(f.generator)},
                    {"rearranged_order", f.rearranged_order.to_string()},
                    {"swap_log", f.swap_log}});
    text += "  " + f.generator.to_string() + ": flipped order " + f.rearranged_order.to_string() + "\n";
  }
  doc["flips"] = list;
  emit_json_or_text(cfg, doc, text);
}

Json ladder_json(const LMLadder& ladder) {
  Json levels = Json::array();
  for (const auto& l : ladder.levels) {
    levels.push_back({{"i", l.i}, {"L", to_json(l.lower)}, {"M", to_json(l.upper)}});
  }
  return levels;
}

void cmd_ladder(const RunConfig& cfg, const RealizableSet& j, int i_max) {
  const LMLadder ladder = lm_ladder(j);
  const int top = std::min(i_max > 0 ? i_max : ladder.max_level(), ladder.max_level());
  Json doc = header("ladder");
  doc["J"] = to_json(j.members());
  doc["levels"] = ladder_json(ladder);
  doc["stabilized"] = ladder.stabilized;
  std::ostringstream text;
  text << "ladder for J = " << j.members().to_string() << "\n";
  for (const auto& l : ladder.levels) {
    text << "  i=" << l.i << "  |L|=" << l.lower.size() << "  |M|=" << l.upper.size() << "  L="
         << l.lower.to_string() << "  M=" << l.upper.to_string() << "\n";
  }
  Json posets = Json::array();
  for (int i = 2; i < top; ++i) {
    const BruhatPoset p = build_bi(ladder, i, cfg.build());
    Json s = poset_summary(p);
    s["i"] = i;
    posets.push_back(s);
    text << poset_summary_text("B_" + std::to_string(i) + "(J)", p);
  }
  doc["orders"] = posets;
  emit_json_or_text(cfg, doc, text.str());
}

void cmd_word(const RunConfig& cfg, const std::string& word_text, int n, bool rex, bool second,
              int ladder_i) {
  Word w = read_word(word_text, n);
  std::string note;
  if ((rex || second || ladder_i > 0) && !is_reduced(w)) {
    const auto words = reduced_words(w, 1);
    note = w.to_string() + " is not reduced; using " + words.front().to_string();
    w = words.front();
  }
  if (second) {
    const BruhatPoset p = build_paths_to(word_inversions(w), cfg.build());
    if (!note.empty()) std::cerr << "note: " << note << "\n";
    emit_poset(cfg, "word", "B_2(Inv(" + w.to_string() + "))", p);
    return;
  }
  if (ladder_i > 0) {
    if (!note.empty()) std::cerr << "note: " << note << "\n";
    cmd_ladder(cfg, word_inversions(w), ladder_i);
    return;
  }
  Json doc = header("word");
  doc["word"] = w.to_string();
  doc["n"] = w.n;
  if (!note.empty()) doc["note"] = note;
  std::ostringstream text;
  if (!note.empty()) text << "note: " << note << "\n";
  if (rex) {
    const RexGraph g = rex_graph(w, cfg.max_class);
    Json words = Json::array();
    for (const auto& r : g.words) words.push_back(r.to_string());
    Json edges = Json::array();
    std::size_t braids = 0;
    for (const auto& e : g.edges) {
      const bool braid = e.move == RexMove::braid;
      braids += braid ? 1 : 0;
      edges.push_back({{"a", e.a}, {"b", e.b}, {"move", braid ? "braid" : "commutation"}});
    }
    const auto classes = g.commutation_classes();
    doc["rex"] = words;
    doc["edges"] = edges;
    doc["classes"] = classes;
    text << w.to_string() << ": " << g.words.size() << " reduced word(s), " << classes.size()
         << " commutation class(es), " << braids << " braid edge(s)\n";
    for (std::size_t c = 0; c < classes.size(); ++c) {
      text << "  class " << c << ":";
      for (std::size_t i : classes[c]) text << ' ' << g.words[i].to_string();
      text << "\n";
    }
  } else {
    const auto inv = word_inversions(w);
    doc["permutation"] = word_permutation(w);
    doc["reduced"] = is_reduced(w);
    doc["inversions"] = to_json(inv.members());
    text << w.to_string() << ": permutation";
    for (int v : word_permutation(w)) text << ' ' << v;
    text << ", " << (is_reduced(w) ? "reduced" : "not reduced") << ", Inv "
         << inv.members().to_string() << "\n";
    if (is_reduced(w)) {
      const KOrder rho = rex_order(w);
      doc["order"] = rho.to_string();
      text << "  crossing order " << (rho.empty() ? "(empty)" : rho.to_string()) << "\n";
    }
  }
  emit_json_or_text(cfg, doc, text.str());
}

Report verify_thm43_suite(const RunConfig& cfg, int n, int i_max, const std::optional<RealizableSet>& j) {
  Report report("ladder theorem" + (j ? std::string() : " at n=" + std::to_string(n)));
  std::vector<RealizableSet> sets;
  if (j) {
    sets.push_back(*j);
  } else {
    for (const auto& f : all_realizable_sets(n, 2)) sets.emplace_back(f);
  }
  for (const auto& s : sets) {
    const Report r = verify_ladder_theorem(s, i_max, cfg.build(), cfg.max_chains);
    if (j) {
      report.merge(r);
    } else {
      report.add("J = " + s.members().to_string(), r.passed(), {},
                 r.passed() ? std::nullopt : std::optional<std::string>(r.to_text()));
    }
  }
  return report;
}

void cmd_verify(const RunConfig& cfg, const std::string& suite, int n, int k, int i_max,
                std::size_t random_orders, const std::optional<RealizableSet>& j) {
  Report report("verify " + suite);
  auto sizes = [&](std::vector<std::pair<int, int>> defaults) {
    if (n > 0 && k > 0) return std::vector<std::pair<int, int>>{{n, k}};
    return defaults;
  };
  const bool all = suite == "all";
  if (all || suite == "ziegler") {
    for (const auto& [a, b] : sizes({{4, 2}, {5, 2}, {4, 3}})) report.merge(verify_ziegler_iso(a, b), "ziegler");
  }
  if (all || suite == "flip-oracle") {
    for (const auto& [a, b] : sizes({{4, 2}, {5, 2}, {4, 3}})) {
      report.merge(verify_flip_oracle(a, b, random_orders, cfg.seed, cfg.max_class),
                   "flip-oracle (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
  }
  if (all || suite == "thm43") {
    report.merge(verify_thm43_suite(cfg, n > 0 ? n : 4, i_max > 0 ? i_max : 3, j), "thm43");
  }
  if (all || suite == "counterexample") report.merge(check_counterexample_n9(), "counterexample");
  emit_report(cfg, report);
}

std::string letters_text(const std::vector<int>& letters) {
  if (letters.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) out += ' ';
    out += 's' + std::to_string(letters[i]);
  }
  return out;
}

Json affine_line(int period, const std::vector<int>& letters, std::size_t max_orders, bool& bad) {
  const auto w = PeriodicPermutation::from_word(period, letters);
  const AffineSet inv = affine_word_inversions(w);
  Json line;
  line["schema"] = kSchema;
  line["period"] = period;
  line["word"] = letters_text(letters);
  line["base"] = w.base();
  Json invs = Json::array();
  bool degenerate = false;
  for (const auto& x : inv) {
    invs.push_back(x.to_string());
    degenerate |= x.degenerate();
  }
  line["inversions"] = invs;
  line["avoids_Y2"] = !degenerate;
  const auto check = affine_check_realizable(inv);
  line["realizable"] = check.realizable;
  if (!check) {
    line["witness"] = check.generator->to_string() + " " + check.pattern;
    bad = true;
    return line;
  }
  const AffineClassSummary s = affine_source_sink(inv, max_orders);
  line["orders"] = s.orders;
  line["classes"] = s.classes;
  line["unique_source"] = s.sources == 1;
  line["unique_sink"] = s.sinks == 1;
  line["source_inv_is_js"] = s.source_has_js;
  line["sink_inv_is_js_jf"] = s.sink_has_js_jf;
  line["inv_determines_class"] = s.inv_determines_class;
  line["status"] = "empirical";
  bad |= degenerate || s.sources != 1 || s.sinks != 1 || !s.source_has_js || !s.sink_has_js_jf;
  return line;
}

void cmd_affine(const RunConfig& cfg, int period, const std::string& word_text, int max_len) {
  Output out(cfg.output);
  bool bad = false;
  std::size_t lines = 0;
  std::size_t inv_not_determining = 0;
  if (!word_text.empty() || max_len < 0) {
    out.stream() << affine_line(period, parse_affine_word(word_text, period), cfg.max_orders, bad).dump()
                 << "\n";
    ++lines;
  } else {
    // Breadth-first over words; one line per distinct periodic permutation,
    // labelled by its first (shortest, lexicographically least) word.
    std::set<PeriodicPermutation> seen;
    std::vector<std::vector<int>> frontier{{}};
    for (int len = 0; len <= max_len; ++len) {
      std::vector<std::vector<int>> next;
      for (const auto& letters : frontier) {
        const auto w = PeriodicPermutation::from_word(period, letters);
        if (!seen.insert(w).second) continue;
        bool line_bad = false;
        const Json line = affine_line(period, letters, cfg.max_orders, line_bad);
        if (line.contains("inv_determines_class") && !line["inv_determines_class"].get<bool>()) {
          ++inv_not_determining;
        }
        bad |= line_bad;
        out.stream() << line.dump() << "\n";
        ++lines;
        if (len < max_len) {
          for (int l = 0; l < period; ++l) {
            auto longer = letters;
            longer.push_back(l);
            next.push_back(std::move(longer));
          }
        }
      }
      frontier = std::move(next);
    }
  }
  Json summary;
  summary["schema"] = kSchema;
  summary["summary"] = "affine sweep (empirical)";
  summary["period"] = period;
  summary["elements"] = lines;
  summary["counterexamples"] = bad;
  summary["inv_not_determining_class"] = inv_not_determining;
  out.stream() << summary.dump() << "\n";
  if (bad) throw ExitStatus{kExitVerify};
}

int run(int argc, char** argv) {
  CLI::App app{"Higher Bruhat orders: enumeration, verification and export"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "dot"}))
      ->capture_default_str();
  app.add_option("-o,--output", cfg.output, "Write output to this file instead of stdout");
  app.add_option("--seed", cfg.seed, "Seed for randomized sweeps")->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads (overrides BRUHAT_THREADS)")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-nodes", cfg.max_nodes, "Node budget (overrides BRUHAT_MAX_NODES)")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-class", cfg.max_class, "Equivalence-class and rex budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--max-chains", cfg.max_chains, "Maximal-chain budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--max-orders", cfg.max_orders, "Affine admissible-order budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  int n = 0;
  int k = 0;
  std::string order_text;
  std::string word_text;
  std::string set_text;
  std::string generator;
  bool down = false;
  bool rex = false;
  bool second = false;
  int ladder_i = 0;
  int i_max = 0;
  std::string suite = "all";
  std::size_t random_orders = 0;
  int period = 0;
  int max_len = -1;

  auto add_n = [&](CLI::App* c, bool required) {
    auto* o = c->add_option("--n", n, "Ground set size")->check(CLI::Range(1, 62));
    if (required) o->required();
  };
  auto add_k = [&](CLI::App* c, bool required) {
    auto* o = c->add_option("--k", k, "Subset size")->check(CLI::Range(1, 62));
    if (required) o->required();
  };

  auto* packets = app.add_subcommand("packets", "List k-packets of C(n,k)");
  add_n(packets, true);
  add_k(packets, true);
  packets->add_option("--generator", generator, "A single (k+1)-set");

  auto* check = app.add_subcommand("check-order", "Check admissibility of a k-order");
  add_n(check, true);
  check->add_option("--order", order_text, "e.g. 23<13<24<14<12<34")->required();

  auto* inv = app.add_subcommand("inv", "Inversion set of an order or a word");
  add_n(inv, false);
  auto* inv_order = inv->add_option("--order", order_text, "Admissible order");
  auto* inv_word = inv->add_option("--word", word_text, "Word in S_n");
  inv_order->excludes(inv_word);

  auto* flips = app.add_subcommand("flips", "Packet flips reachable by elementary equivalences");
  add_n(flips, true);
  flips->add_option("--order", order_text, "Admissible order")->required();
  flips->add_flag("--down", down, "Antilexicographic flips instead");

  auto* bruhat = app.add_subcommand("bruhat", "Build B(n,k)");
  add_n(bruhat, true);
  add_k(bruhat, true);

  auto* paths = app.add_subcommand("paths-to", "Build the second Bruhat order of a realizable J");
  add_n(paths, false);
  k = 2;
  add_k(paths, false);
  auto* paths_set = paths->add_option("--set", set_text, "Realizable k-set, e.g. 12,13,23");
  auto* paths_word = paths->add_option("--word", word_text, "J = Inv(word)");
  paths_set->excludes(paths_word);

  auto* word = app.add_subcommand("word", "Word report, rex graph, second order or ladder");
  add_n(word, false);
  word->add_option("word", word_text, "e.g. stutst, s1 s2 s1 or 121")->required();
  auto* f_rex = word->add_flag("--rex-graph", rex, "Reduced-expression graph");
  auto* f_second = word->add_flag("--second-order", second, "B_2(Inv(w))");
  auto* f_ladder = word->add_option("--ladder", ladder_i, "L^i/M^i table and B_i up to i")
                       ->check(CLI::PositiveNumber);
  f_rex->excludes(f_second)->excludes(f_ladder);
  f_second->excludes(f_ladder);

  auto* ladder = app.add_subcommand("ladder", "L^i/M^i ladder and B_i(J) summaries");
  add_n(ladder, false);
  auto* ladder_set = ladder->add_option("--set", set_text, "Realizable 2-set");
  auto* ladder_word = ladder->add_option("--word", word_text, "J = Inv(word)");
  ladder_set->excludes(ladder_word);
  ladder->add_option("--i", i_max, "Highest level to build")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "all|ziegler|thm43|counterexample|flip-oracle")
      ->check(CLI::IsMember({"all", "ziegler", "thm43", "counterexample", "flip-oracle"}))
      ->capture_default_str();
  add_n(verify, false);
  verify->add_option("--k", k, "Subset size")->check(CLI::Range(1, 62));
  verify->add_option("--i", i_max, "Highest ladder level for thm43")->check(CLI::PositiveNumber);
  verify->add_option("--random", random_orders, "Random orders for flip-oracle (0 = exhaustive)");
  auto* verify_set = verify->add_option("--set", set_text, "Single J for thm43");
  auto* verify_word = verify->add_option("--word", word_text, "Single J = Inv(word) for thm43");
  verify_set->excludes(verify_word);

  auto* affine = app.add_subcommand("affine", "Affine inversion sets and empirical source/sink");
  affine->add_option("--period", period, "Period N")->required()->check(CLI::Range(2, 62));
  auto* aff_word = affine->add_option("--word", word_text, "Affine word, e.g. s0 s1 s2");
  auto* aff_len = affine->add_option("--max-len", max_len, "Sweep all words up to this length")
                      ->check(CLI::NonNegativeNumber);
  aff_word->excludes(aff_len);

  auto* exporter = app.add_subcommand("export", "Export B(n,k), a second order or B_i(J)");
  add_n(exporter, false);
  exporter->add_option("--k", k, "Subset size for B(n,k)")->check(CLI::Range(1, 62));
  auto* exp_set = exporter->add_option("--set", set_text, "Realizable 2-set");
  auto* exp_word = exporter->add_option("--word", word_text, "J = Inv(word)");
  exp_set->excludes(exp_word);
  exporter->add_option("--i", i_max, "Export B_i(J) instead of the second order")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (cfg.threads > 0) set_thread_count(cfg.threads);

  if (*packets) {
    cmd_packets(cfg, n, k, generator);
  } else if (*check) {
    cmd_check_order(cfg, parse_order(order_text, n));
  } else if (*inv) {
    if (order_text.empty() && word_text.empty()) fail(ErrorKind::invalid_arguments, "need --order or --word");
    cmd_inv(cfg, n, order_text, word_text);
  } else if (*flips) {
    cmd_flips(cfg, parse_order(order_text, n), down);
  } else if (*bruhat) {
    const BruhatPoset p = build_bnk(n, k, cfg.build());
    emit_poset(cfg, "bruhat", "B(" + std::to_string(n) + "," + std::to_string(k) + ")", p);
  } else if (*paths) {
    if (set_text.empty() && word_text.empty()) fail(ErrorKind::invalid_arguments, "need --set or --word");
    const RealizableSet j = target_set(set_text, word_text, n, k);
    emit_poset(cfg, "paths-to", "paths to J = " + j.members().to_string(), build_paths_to(j, cfg.build()));
  } else if (*word) {
    cmd_word(cfg, word_text, n, rex, second, ladder_i);
  } else if (*ladder) {
    if (set_text.empty() && word_text.empty()) fail(ErrorKind::invalid_arguments, "need --set or --word");
    cmd_ladder(cfg, target_set(set_text, word_text, n, 2), i_max);
  } else if (*verify) {
    std::optional<RealizableSet> j;
    if (!set_text.empty() || !word_text.empty()) j = target_set(set_text, word_text, n, 2);
    cmd_verify(cfg, suite, n, k, i_max, random_orders, j);
  } else if (*affine) {
    cmd_affine(cfg, period, word_text, word_text.empty() ? max_len : -1);
  } else if (*exporter) {
    RunConfig out = cfg;
    if (out.format == "text") out.format = "dot";
    if (!set_text.empty() || !word_text.empty()) {
      const RealizableSet j = target_set(set_text, word_text, n, 2);
      if (i_max > 0) {
        emit_poset(out, "export", "B_i(J)", build_bi(j, i_max, cfg.build()));
      } else {
        emit_poset(out, "export", "paths to J", build_paths_to(j, cfg.build()));
      }
    } else {
      if (n <= 0 || k <= 0) fail(ErrorKind::invalid_arguments, "need --n and --k, or --set/--word");
      emit_poset(out, "export", "B(n,k)", build_bnk(n, k, cfg.build()));
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ExitStatus& s) {
    return s.code;
  } catch (const LimitExceeded& e) {
    std::cerr << "budget exceeded (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kExitBudget;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::internal_consistency || e.kind() == ErrorKind::shape_violation) {
      std::cerr << "verification failure (" << to_string(e.kind()) << "): " << e.what() << "\n";
      return kExitVerify;
    }
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
