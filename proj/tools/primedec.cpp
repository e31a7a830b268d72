// primedec: decide sentences of integer arithmetic with a signed prime
// predicate, eliminate quantifiers, and search for prime patterns.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "primedec/dickson.hpp"
#include "primedec/errors.hpp"
#include "primedec/eval.hpp"
#include "primedec/patterns.hpp"
#include "primedec/qe.hpp"
#include "primedec/syntax.hpp"

using json = nlohmann::json;
using namespace primedec;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitNotASentence = 4;

struct RunConfig {
  long search_bound = 1000000;
  std::size_t dnf_cap = 100000;
  long lcm_cap = 1000000;
  int mr_rounds = 40;
  bool trace = false;
  bool json_out = false;
  bool simplify = false;
};

json json_int(const Int& v) {
  if (v.fits_slong_p()) return static_cast<long long>(v.get_si());
  return v.get_str();
}

QeOptions qe_options(const RunConfig& cfg) {
  QeOptions opt;
  opt.dnf_cap = cfg.dnf_cap;
  opt.lcm_cap = Int(cfg.lcm_cap);
  return opt;
}

std::string read_formula_input(const std::string& expr,
                               const std::string& file) {
  if (!expr.empty() && !file.empty())
    throw std::invalid_argument("give a formula either with -e or as a file");
  if (!expr.empty()) return expr;
  if (file.empty())
    throw std::invalid_argument("no formula given (use -e or a file path)");
  std::ifstream in(file);
  if (!in) throw std::invalid_argument("cannot read file: " + file);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r'))
    text.pop_back();
  return text;
}

std::vector<Int> parse_int_list(const std::string& text, char sep) {
  std::vector<Int> out;
  std::string cur;
  std::istringstream ss(text);
  while (std::getline(ss, cur, sep)) {
    if (cur.empty()) continue;
    out.emplace_back(cur);
  }
  return out;
}

std::vector<AffineMap> parse_maps(const std::vector<std::string>& tokens) {
  std::vector<AffineMap> maps;
  for (const auto& tok : tokens) {
    std::vector<Int> parts = parse_int_list(tok, ',');
    if (parts.size() != 2)
      throw std::invalid_argument("map must look like 'a,b': " + tok);
    if (parts[0] < 1)
      throw std::invalid_argument("map coefficient must be >= 1: " + tok);
    maps.push_back({parts[0], parts[1]});
  }
  return maps;
}

std::vector<AffineMap> parse_maps_string(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : text) {
    if (c == ' ' || c == ';') {
      if (!cur.empty()) tokens.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) tokens.push_back(cur);
  return parse_maps(tokens);
}

// "{0,1,2}" or "{}" or "0,1,2"
std::set<Int> parse_pattern_set(std::string text) {
  if (!text.empty() && text.front() == '{') text.erase(text.begin());
  if (!text.empty() && text.back() == '}') text.pop_back();
  std::vector<Int> xs = parse_int_list(text, ',');
  return std::set<Int>(xs.begin(), xs.end());
}

json dickson_instances_json(const std::vector<DicksonInstance>& uses) {
  json arr = json::array();
  for (const auto& u : uses) {
    json coeffs = json::array();
    for (const auto& c : u.coeffs) coeffs.push_back(json_int(c));
    json terms = json::array();
    for (const auto& t : u.terms) terms.push_back(t);
    arr.push_back({{"coeffs", coeffs}, {"terms", terms}});
  }
  return arr;
}

void print_trace(const Verdict& v) {
  for (const auto& u : v.dickson_uses) {
    std::cout << "dickson instance: coeffs [";
    for (std::size_t i = 0; i < u.coeffs.size(); ++i)
      std::cout << (i ? ", " : "") << u.coeffs[i].get_str();
    std::cout << "], terms [";
    for (std::size_t i = 0; i < u.terms.size(); ++i)
      std::cout << (i ? ", " : "") << u.terms[i];
    std::cout << "]\n";
  }
  for (const auto& w : v.finite_witnesses)
    std::cout << "finite-case witness: " << w << "\n";
  if (v.used_probable_primality)
    std::cout << "primality: probable (some value lay beyond the "
                 "deterministic witness range)\n";
}

int cmd_decide(const RunConfig& cfg, const std::string& expr,
               const std::string& file) {
  FormulaPtr f = parse_formula(read_formula_input(expr, file));
  Verdict v = decide_sentence(f, qe_options(cfg));

  std::optional<Int> witness;
  if (v.value && f->kind == FormulaNode::Kind::Exists &&
      !has_quantifier(f->f1))
    witness = witness_search(f->var, f->f1, Int(cfg.search_bound));

  QEOutput out = qe_formula(f, qe_options(cfg));
  FormulaPtr qf = cfg.simplify ? simplify_absorb(out.formula) : out.formula;

  if (cfg.json_out) {
    json j;
    j["verdict"] = v.value;
    j["conditional_on_dickson"] = v.conditional_on_dickson;
    j["dickson_instances"] = dickson_instances_json(v.dickson_uses);
    j["witness"] = witness ? json_int(*witness) : json(nullptr);
    j["qf_formula"] = print_formula(qf);
    std::cout << j.dump() << "\n";
    return kExitOk;
  }
  std::cout << "verdict: " << (v.value ? "true" : "false") << "\n";
  std::cout << "conditional_on_dickson: "
            << (v.conditional_on_dickson ? "true" : "false") << "\n";
  if (witness) std::cout << "witness: " << witness->get_str() << "\n";
  if (cfg.trace) {
    print_trace(v);
    std::cout << "qf: " << print_formula(qf) << "\n";
  }
  return kExitOk;
}

int cmd_qe(const RunConfig& cfg, const std::string& expr,
           const std::string& file) {
  FormulaPtr f = parse_formula(read_formula_input(expr, file));
  QEOutput out = qe_formula(f, qe_options(cfg));
  FormulaPtr qf = cfg.simplify ? simplify_absorb(out.formula) : out.formula;
  if (cfg.json_out) {
    json j;
    j["qf_formula"] = print_formula(qf);
    j["dickson_instances"] = dickson_instances_json(out.dickson_uses);
    std::cout << j.dump() << "\n";
    return kExitOk;
  }
  std::cout << print_formula(qf) << "\n";
  return kExitOk;
}

int cmd_star(const RunConfig& cfg, const std::vector<std::string>& map_args) {
  std::vector<AffineMap> maps = parse_maps(map_args);
  if (maps.empty()) throw std::invalid_argument("at least one map required");
  StarVerdict sv = star_check(maps);
  if (cfg.json_out) {
    json j;
    j["holds"] = sv.holds;
    j["witness_prime"] =
        sv.witness_prime ? json_int(*sv.witness_prime) : json(nullptr);
    j["n_bound"] = json_int(bound_N(maps));
    std::cout << j.dump() << "\n";
    return kExitOk;
  }
  if (sv.holds)
    std::cout << "holds\n";
  else
    std::cout << "fails (witness prime " << sv.witness_prime->get_str()
              << ")\n";
  return kExitOk;
}

int cmd_constellation(const RunConfig& cfg, const std::string& primes,
                      const std::string& composites, long count,
                      long budget) {
  DicksonSystem sys(parse_maps_string(primes), parse_maps_string(composites));
  ConstellationResult res =
      find_constellation(sys, Int(count), Int(budget));
  if (cfg.json_out) {
    json j;
    json vals = json::array();
    for (const auto& v : res.values) vals.push_back(json_int(v));
    j["values"] = vals;
    j["budget_exhausted"] = res.budget_exhausted;
    std::cout << j.dump() << "\n";
  } else {
    for (const auto& v : res.values) std::cout << v.get_str() << "\n";
    if (res.budget_exhausted) std::cout << "(budget exhausted)\n";
  }
  return res.values.empty() && res.budget_exhausted ? kExitResource : kExitOk;
}

int cmd_consecutive(const RunConfig& cfg, const std::string& offsets,
                    long budget) {
  std::vector<Int> b = parse_int_list(offsets, ',');
  std::optional<Int> x = find_consecutive_tuple(b, Int(budget));
  if (cfg.json_out) {
    json j;
    j["x"] = x ? json_int(*x) : json(nullptr);
    std::cout << j.dump() << "\n";
  } else if (x) {
    std::cout << x->get_str() << "\n";
  } else {
    std::cout << "not found within budget\n";
  }
  return x ? kExitOk : kExitResource;
}

int cmd_ap(const RunConfig& cfg, long n, const std::string& pattern,
           long budget, bool replay) {
  PatternSpec spec{Int(n), parse_pattern_set(pattern)};
  std::optional<APResult> ap;
  std::optional<bool> t0;
  if (replay) {
    auto r = find_ap_pattern_replay(spec, Int(budget));
    if (r) {
      ap = r->ap;
      t0 = r->t0_matches;
    }
  } else {
    ap = find_ap_pattern(spec, Int(budget));
  }
  if (cfg.json_out) {
    json j;
    j["found"] = ap.has_value();
    if (ap) {
      j["a"] = json_int(ap->a);
      j["b"] = json_int(ap->b);
      json terms = json::array();
      for (const auto& t : ap->terms) terms.push_back(json_int(t));
      j["terms"] = terms;
      if (t0) j["t0_matches"] = *t0;
    }
    std::cout << j.dump() << "\n";
  } else if (ap) {
    std::cout << "a=" << ap->a.get_str() << " b=" << ap->b.get_str()
              << " terms";
    for (const auto& t : ap->terms) std::cout << " " << t.get_str();
    std::cout << "\n";
    if (t0 && !*t0)
      std::cout << "(replay: position 0 does not match the requested "
                   "pattern)\n";
  } else {
    std::cout << "not found within budget\n";
  }
  return ap ? kExitOk : kExitResource;
}

json subset_json(std::uint64_t mask) {
  json s = json::array();
  for (std::uint64_t j = 0; mask >> j; ++j)
    if ((mask >> j) & 1) s.push_back(static_cast<long long>(j));
  return s;
}

int cmd_shatter(const RunConfig& cfg, long k, const std::string& offsets,
                long budget) {
  std::vector<Int> offs;
  if (!offsets.empty() && offsets != "auto")
    offs = parse_int_list(offsets, ',');
  std::optional<ShatterResult> res = find_shattering(Int(k), offs, Int(budget));
  if (!res) {
    if (cfg.json_out)
      std::cout << json{{"found", false}}.dump() << "\n";
    else
      std::cout << "not found within budget\n";
    return kExitResource;
  }
  if (cfg.json_out) {
    json j;
    j["found"] = true;
    j["k"] = k;
    json os = json::array();
    for (const auto& o : res->offsets) os.push_back(json_int(o));
    j["offsets"] = os;
    json ws = json::array();
    for (const auto& [mask, b] : res->witnesses)
      ws.push_back({{"subset", subset_json(mask)}, {"b", json_int(b)}});
    j["witnesses"] = ws;
    std::cout << j.dump() << "\n";
  } else {
    for (const auto& [mask, b] : res->witnesses) {
      std::cout << "{";
      bool first = true;
      for (std::uint64_t j = 0; mask >> j; ++j)
        if ((mask >> j) & 1) {
          std::cout << (first ? "" : ",") << j;
          first = false;
        }
      std::cout << "} -> " << b.get_str() << "\n";
    }
  }
  return kExitOk;
}

int cmd_ipwitness(const RunConfig& cfg, long n, long k,
                  long budget) {
  std::optional<IPWitnesses> res =
      build_ip_witnesses(Int(n), Int(k), Int(budget));
  if (!res) {
    if (cfg.json_out)
      std::cout << json{{"found", false}}.dump() << "\n";
    else
      std::cout << "not found within budget\n";
    return kExitResource;
  }
  if (cfg.json_out) {
    json j;
    j["found"] = true;
    j["n"] = n;
    j["k"] = k;
    j["d"] = json_int(res->d);
    j["ap"] = {{"a", json_int(res->ap.a)}, {"b", json_int(res->ap.b)}};
    json offs = json::array();
    for (const auto& row : res->offsets) {
      json r = json::array();
      for (const auto& o : row) r.push_back(json_int(o));
      offs.push_back(r);
    }
    j["offsets"] = offs;
    json ws = json::array();
    for (const auto& [mask, b] : res->witnesses)
      ws.push_back({{"subset", subset_json(mask)}, {"b", json_int(b)}});
    j["witnesses"] = ws;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "ap: a=" << res->ap.a.get_str()
              << " b=" << res->ap.b.get_str() << "\n";
    for (const auto& [mask, b] : res->witnesses)
      std::cout << "b_" << mask << " = " << b.get_str() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decision procedure and pattern searches for the integers "
               "with addition and a signed prime predicate"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--bound", cfg.search_bound, "witness search bound")
      ->envname("PRIMEDEC_BOUND");
  app.add_option("--dnf-cap", cfg.dnf_cap, "max DNF disjuncts");
  app.add_option("--lcm-cap", cfg.lcm_cap, "max residue modulus");
  app.add_option("--mr-rounds", cfg.mr_rounds,
                 "Miller-Rabin rounds beyond the deterministic range");
  app.add_flag("--trace", cfg.trace, "print Dickson instances and witnesses");
  app.add_flag("--json", cfg.json_out, "machine-readable output");
  app.add_flag("--simplify", cfg.simplify, "absorption pass on QE output");

  std::string expr, file;
  auto* decide = app.add_subcommand("decide", "decide a sentence");
  decide->add_option("-e,--expr", expr, "formula text");
  decide->add_option("file", file, "file with one formula");

  std::string qexpr, qfile;
  auto* qe = app.add_subcommand("qe", "eliminate quantifiers");
  qe->add_option("-e,--expr", qexpr, "formula text");
  qe->add_option("file", qfile, "file with one formula");

  std::vector<std::string> star_maps;
  auto* star = app.add_subcommand("star", "check the star condition");
  star->add_option("maps", star_maps, "maps as 'a,b'")->required();

  std::string cprimes, ccomposites;
  long ccount = 1, cbudget = 1000000;
  auto* constellation =
      app.add_subcommand("constellation", "prime/composite constellations");
  constellation->add_option("--primes", cprimes, "maps 'a,b; a,b'")
      ->required();
  constellation->add_option("--composites", ccomposites, "maps 'a,b; a,b'");
  constellation->add_option("--count", ccount, "values requested");
  constellation->add_option("--budget", cbudget, "largest m scanned");

  std::string coffsets;
  long cobudget = 1000000;
  auto* consecutive =
      app.add_subcommand("consecutive", "consecutive prime tuples");
  consecutive->add_option("offsets", coffsets, "offsets '0,2,6'")->required();
  consecutive->add_option("--budget", cobudget, "largest x scanned");

  long ap_n = 0, ap_budget = 200000;
  std::string ap_pattern;
  bool ap_replay = false;
  auto* ap = app.add_subcommand(
      "ap", "arithmetic progression with a primality pattern");
  ap->add_option("n", ap_n, "progression length")->required();
  ap->add_option("pattern", ap_pattern, "prime positions '{0,2}'")
      ->required();
  ap->add_option("--budget", ap_budget, "grid bound for a and b");
  ap->add_flag("--proof-replay", ap_replay, "replay the b = n!+1 argument");

  long sh_k = 0, sh_budget = 1000000;
  std::string sh_offsets = "auto";
  auto* shatter = app.add_subcommand("shatter", "shattering witnesses");
  shatter->add_option("k", sh_k, "offset count")->required();
  shatter->add_option("offsets", sh_offsets, "offsets '0,2,6' or 'auto'");
  shatter->add_option("--budget", sh_budget, "largest |b| scanned");

  long ip_n = 0, ip_k = 0, ip_budget = 1000000;
  auto* ipw = app.add_subcommand(
      "ipwitness", "independence-property witnesses from one progression");
  ipw->add_option("n", ip_n, "arity")->required();
  ipw->add_option("k", ip_k, "values per slot")->required();
  ipw->add_option("--budget", ip_budget, "grid bound for the progression");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cfg.dnf_cap < 1 || cfg.lcm_cap < 1 || cfg.search_bound < 0)
      throw std::invalid_argument("caps and bounds must be positive");
    set_default_mr_rounds(cfg.mr_rounds);
    if (decide->parsed()) return cmd_decide(cfg, expr, file);
    if (qe->parsed()) return cmd_qe(cfg, qexpr, qfile);
    if (star->parsed()) return cmd_star(cfg, star_maps);
    if (constellation->parsed())
      return cmd_constellation(cfg, cprimes, ccomposites, ccount, cbudget);
    if (consecutive->parsed()) return cmd_consecutive(cfg, coffsets, cobudget);
    if (ap->parsed())
      return cmd_ap(cfg, ap_n, ap_pattern, ap_budget, ap_replay);
    if (shatter->parsed()) return cmd_shatter(cfg, sh_k, sh_offsets, sh_budget);
    if (ipw->parsed()) return cmd_ipwitness(cfg, ip_n, ip_k, ip_budget);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const NotASentenceError& e) {
    std::cerr << e.what() << "\n";
    return kExitNotASentence;
  } catch (const ResourceLimitError& e) {
    std::cerr << e.what() << "\n";
    return kExitResource;
  } catch (const StarFailureError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
