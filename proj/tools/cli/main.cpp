// orbitprimes: experiments on orbits of z^d + c — orbit computation, iterate
// factorization, stability and non-power certificates, Newton polygons and
// ramification towers, tower-automorphism simulation, and prime-density
// sieves. One experiment per invocation; every run echoes version, resolved
// config, and seed, so identical invocations give byte-identical output.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "orbitprimes/density.hpp"
#include "orbitprimes/dynamics.hpp"
#include "orbitprimes/errors.hpp"
#include "orbitprimes/factor_int.hpp"
#include "orbitprimes/factor_q.hpp"
#include "orbitprimes/galois.hpp"
#include "orbitprimes/jsonio.hpp"
#include "orbitprimes/localfields.hpp"
#include "orbitprimes/mapspec.hpp"
#include "orbitprimes/numeric.hpp"
#include "orbitprimes/ratpoly.hpp"
#include "orbitprimes/stability.hpp"
#include "orbitprimes/version.hpp"

namespace op = orbitprimes;
using ojson = nlohmann::ordered_json;

namespace {

struct GlobalOpts {
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string output;  // empty = stdout
  int threads = 0;     // 0 = not yet resolved
  std::string config_path;
  ojson config = ojson::object();
};

// Config-file fallback for one flag: the command line wins when present,
// then the config key of the same name, then the default already in `var`.
class Cfg {
 public:
  Cfg(const ojson& data, CLI::App* cmd) : data_(data), cmd_(cmd) {}

  void get(const std::string& name, std::string& var) const {
    const ojson* v = lookup(name);
    if (!v) return;
    var = v->is_string() ? v->get<std::string>() : v->dump();
  }
  void get(const std::string& name, bool& var) const {
    const ojson* v = lookup(name);
    if (!v) return;
    if (!v->is_boolean())
      throw op::ArgumentError("config key '" + name + "' must be a boolean");
    var = v->get<bool>();
  }
  template <typename T>
  void get(const std::string& name, T& var) const {
    const ojson* v = lookup(name);
    if (!v) return;
    if (!v->is_number())
      throw op::ArgumentError("config key '" + name + "' must be a number");
    var = v->get<T>();
  }
  bool provided(const std::string& name) const {
    return (cmd_ && cmd_->count("--" + name) > 0) || data_.contains(name);
  }

 private:
  const ojson* lookup(const std::string& name) const {
    if (cmd_ && cmd_->count("--" + name) > 0) return nullptr;
    if (!data_.contains(name)) return nullptr;
    return &data_.at(name);
  }
  const ojson& data_;
  CLI::App* cmd_;
};

ojson load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw op::ArgumentError("cannot open config file '" + path + "'");
  ojson data;
  try {
    in >> data;
  } catch (const nlohmann::json::parse_error& e) {
    throw op::ArgumentError("config file '" + path + "': " + e.what());
  }
  if (!data.is_object())
    throw op::ArgumentError("config file '" + path + "' must hold a JSON object");
  return data;
}

op::Rational parse_rat(const std::string& text, const std::string& what) {
  if (text.empty()) throw op::ArgumentError("--" + what + " is required");
  try {
    return op::parse_rational(text);
  } catch (const op::ArgumentError&) {
    throw op::ArgumentError("--" + what + ": '" + text + "' is not a rational");
  }
}

std::vector<long> parse_long_list(const std::string& text, const std::string& what) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      long v = std::stol(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw op::ArgumentError("--" + what + ": '" + item + "' is not an integer");
    }
  }
  if (out.empty()) throw op::ArgumentError("--" + what + ": empty list");
  return out;
}

// "1%3,2%3" — residues sharing one modulus.
op::ClassFilter parse_classes(const std::string& text) {
  op::ClassFilter filter;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto sep = item.find('%');
    long r = 0, m = 0;
    try {
      if (sep == std::string::npos) throw std::invalid_argument(item);
      size_t p1 = 0, p2 = 0;
      r = std::stol(item.substr(0, sep), &p1);
      m = std::stol(item.substr(sep + 1), &p2);
      if (p1 != sep || p2 != item.size() - sep - 1) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw op::ArgumentError("--classes: '" + item + "' is not of the form r%m");
    }
    if (filter.modulus == 0) filter.modulus = m;
    if (m != filter.modulus)
      throw op::ArgumentError("--classes: all classes must share one modulus");
    filter.residues.push_back(r);
  }
  if (filter.residues.empty()) throw op::ArgumentError("--classes: empty list");
  std::sort(filter.residues.begin(), filter.residues.end());
  filter.residues.erase(
      std::unique(filter.residues.begin(), filter.residues.end()),
      filter.residues.end());
  return filter;
}

std::string class_names(const op::ClassFilter& filter) {
  std::string out;
  for (long r : filter.residues) {
    if (!out.empty()) out += ',';
    out += std::to_string(r) + "%" + std::to_string(filter.modulus);
  }
  return out;
}

// "full,sum1,full" — one kernel per tower level.
std::vector<op::KernelSpec> parse_kernels(const std::string& text) {
  std::vector<op::KernelSpec> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "full") {
      out.push_back(op::KernelSpec::full());
    } else if (item.rfind("sum", 0) == 0) {
      try {
        size_t pos = 0;
        long r = std::stol(item.substr(3), &pos);
        if (pos != item.size() - 3 || r < 0) throw std::invalid_argument(item);
        out.push_back(op::KernelSpec::sum_in(r));
      } catch (const std::exception&) {
        throw op::ArgumentError("--kernels: '" + item + "' is not full or sum<r>");
      }
    } else {
      throw op::ArgumentError("--kernels: '" + item + "' is not full or sum<r>");
    }
  }
  if (out.empty()) throw op::ArgumentError("--kernels: empty list");
  return out;
}

std::string kernel_names(const std::vector<op::KernelSpec>& kernels) {
  std::string out;
  for (const auto& k : kernels) {
    if (!out.empty()) out += ',';
    out += k.kind == op::KernelSpec::Kind::Full ? "full"
                                                : "sum" + std::to_string(k.r);
  }
  return out;
}

op::RatPoly parse_g(const std::string& text) {
  try {
    return op::parse_poly(text);
  } catch (const op::ArgumentError& e) {
    throw op::ArgumentError(std::string("--g: ") + e.what());
  }
}

void guard_bits(const op::Rational& v, long index) {
  if (mpz_sizeinbase(v.get_num().get_mpz_t(), 2) > (size_t)op::kOrbitBitCap ||
      mpz_sizeinbase(v.get_den().get_mpz_t(), 2) > (size_t)op::kOrbitBitCap)
    throw op::CapabilityError("orbit value exceeds the bit-size cap at index " +
                              std::to_string(index));
}

ojson commons(const GlobalOpts& g) {
  return ojson{{"seed", g.seed}, {"format", g.format}, {"threads", g.threads}};
}

void emit(const GlobalOpts& g, const std::string& command, const ojson& rc,
          const std::string& payload_json, const std::string& csv_body = "") {
  std::string text;
  if (g.format == "csv") {
    if (csv_body.empty())
      throw op::ArgumentError("--format csv is not available for " + command);
    std::ostringstream out;
    out << "# tool=orbitprimes\n# version=" << op::kVersion
        << "\n# command=" << command << "\n# seed=" << g.seed
        << "\n# config=" << rc.dump() << "\n" << csv_body;
    text = out.str();
  } else {
    op::RunMeta meta;
    meta.command = command;
    meta.seed = g.seed;
    meta.config_json = rc.dump();
    std::string doc = op::wrap_run(meta, payload_json);
    text = g.format == "json" ? doc + "\n" : op::json_to_text(doc);
  }
  if (g.output.empty()) {
    std::cout << text << std::flush;
  } else {
    std::ofstream out(g.output, std::ios::binary);
    if (!out) throw op::ArgumentError("cannot open output file '" + g.output + "'");
    out << text;
  }
}

struct OrbitCmd {
  long d = 2;
  std::string c, a0 = "0";
  long N = 10;
  std::uint64_t q = 0;
  bool fast = false;
  std::string algo = "brent";
  CLI::App* cmd = nullptr;

  void setup(CLI::App& app) {
    cmd = app.add_subcommand(
        "orbit", "exact orbit of a0 under z^d + c, or its behavior mod a prime q");
    cmd->add_option("--d", d, "map degree (>= 2)");
    cmd->add_option("--c", c, "map constant, rational a/b");
    cmd->add_option("--a0", a0, "starting point (0 = critical orbit)");
    cmd->add_option("--N", N, "number of iterates to list");
    cmd->add_option("--q", q, "classify: does the prime q divide the orbit?");
    cmd->add_flag("--fast", fast,
                  "allow the permutation shortcut; the index may come back -1");
    cmd->add_option("--algo", algo, "cycle detection algorithm")
        ->check(CLI::IsMember({"brent", "floyd"}));
  }

  void run(const GlobalOpts& g) {
    Cfg cfg(g.config, cmd);
    cfg.get("d", d);
    cfg.get("c", c);
    cfg.get("a0", a0);
    cfg.get("N", N);
    bool q_given = cfg.provided("q");
    cfg.get("q", q);
    cfg.get("fast", fast);
    cfg.get("algo", algo);

    op::MapSpec m{d, parse_rat(c, "c"), parse_rat(a0, "a0")};
    op::validate(m);
    if (q_given) {
      op::OrbitClassifier classifier(m);
      auto res = classifier.classify(
          q, !fast, algo == "floyd" ? op::CycleAlgo::Floyd : op::CycleAlgo::Brent);
      ojson rc{{"d", m.d},          {"c", op::to_string(m.c)},
               {"a0", op::to_string(m.a0)}, {"q", q},
               {"fast", fast},      {"algo", algo}};
      rc.update(commons(g));
      emit(g, "orbit", rc, op::to_json(res));
      return;
    }

    op::CriticalOrbit orbit;
    if (m.a0 == 0) {
      orbit = op::critical_orbit(m, N);
    } else {
      std::vector<op::Rational> seen{m.a0};
      for (long i = 1; i <= N; ++i) {
        op::Rational next = op::map_step(m, seen.back());
        guard_bits(next, i);
        if (!orbit.finite_flag) {
          for (size_t j = 0; j < seen.size(); ++j) {
            if (seen[j] == next) {
              orbit.finite_flag = true;
              orbit.repeat_first = (long)j;
              orbit.repeat_second = i;
              break;
            }
          }
        }
        seen.push_back(next);
        orbit.values.push_back(next);
      }
    }
    ojson rc{{"d", m.d}, {"c", op::to_string(m.c)}, {"a0", op::to_string(m.a0)},
             {"N", N}};
    rc.update(commons(g));
    emit(g, "orbit", rc, op::to_json(orbit), op::to_csv(orbit));
  }
};

struct RdsCmd {
  long d = 2;
  std::string c, a0 = "0", primes;
  long N = 12;
  CLI::App* cmd = nullptr;

  void setup(CLI::App& app) {
    cmd = app.add_subcommand(
        "rds-check", "verify the rigid-divisibility conditions over chosen primes");
    cmd->add_option("--d", d, "map degree");
    cmd->add_option("--c", c, "map constant, rational a/b");
    cmd->add_option("--a0", a0, "starting point");
    cmd->add_option("--primes", primes, "comma-separated primes to track");
    cmd->add_option("--N", N, "check indices 1..N");
  }

  void run(const GlobalOpts& g) {
    Cfg cfg(g.config, cmd);
    cfg.get("d", d);
    cfg.get("c", c);
    cfg.get("a0", a0);
    cfg.get("primes", primes);
    cfg.get("N", N);
    if (primes.empty()) throw op::ArgumentError("--primes is required");

    op::MapSpec m{d, parse_rat(c, "c"), parse_rat(a0, "a0")};
    auto plist = parse_long_list(primes, "primes");
    std::vector<op::BigInt> pbig(plist.begin(), plist.end());
    auto rep = op::verify_rds(m, pbig, N);

    ojson rc{{"d", m.d}, {"c", op::to_string(m.c)}, {"a0", op::to_string(m.a0)},
             {"primes", plist}, {"N", N}};
    rc.update(commons(g));
    emit(g, "rds-check", rc, op::to_json(rep));
  }
};

struct StabilityCmd {
  long d = 2;
  std::string c, gtext = "z";
  long N = 10;
  bool firststab = false, eventual = false, zcase = false;
  long p = 0;
  std::uint64_t trial_bound = 100000, rho_iters = 2000000;
  CLI::App* cmd = nullptr;

  void setup(CLI::App& app) {
    cmd = app.add_subcommand(
        "stability", "irreducibility and eventual-stability certificates");
    cmd->add_option("--d", d, "map degree");
    cmd->add_option("--c", c, "map constant, rational a/b (integer for --zcase)");
    cmd->add_option("--g", gtext, "outer polynomial for --firststab");
    cmd->add_option("--N", N, "levels to certify");
    cmd->add_flag("--firststab", firststab, "perfect-power certificates for g(f^n)");
    cmd->add_flag("--eventual-stability", eventual,
                  "place-based eventual-stability verdict with factor bound");
    cmd->add_flag("--zcase", zcase, "non-p-th-power suite for z^p + c, integer c");
    cmd->add_option("--p", p, "prime degree for --zcase");
    cmd->add_option("--trial-bound", trial_bound, "trial division bound");
    cmd->add_option("--rho-iters", rho_iters, "Pollard rho step budget");
  }

  void run(const GlobalOpts& g) {
    Cfg cfg(g.config, cmd);
    cfg.get("d", d);
    cfg.get("c", c);
    cfg.get("g", gtext);
    cfg.get("N", N);
    cfg.get("firststab", firststab);
    cfg.get("eventual-stability", eventual);
    cfg.get("zcase", zcase);
    cfg.get("p", p);
    cfg.get("trial-bound", trial_bound);
    cfg.get("rho-iters", rho_iters);
    if (firststab + eventual + zcase != 1)
      throw op::ArgumentError(
          "choose exactly one of --firststab, --eventual-stability, --zcase");

    if (firststab) {
      op::MapSpec m{d, parse_rat(c, "c"), op::Rational(0)};
      op::RatPoly gp = parse_g(gtext);
      auto cert = op::firststab_certify(gp, m, N);
      ojson rc{{"mode", "firststab"}, {"d", m.d}, {"c", op::to_string(m.c)},
               {"g", op::format_poly(gp)}, {"N", N}};
      rc.update(commons(g));
      emit(g, "stability", rc, op::to_json(cert));
    } else if (eventual) {
      op::MapSpec m{d, parse_rat(c, "c"), op::Rational(0)};
      op::FactorBudget budget{trial_bound, rho_iters, g.seed};
      auto cert = op::eventual_stability_verdict(m, budget);
      ojson rc{{"mode", "eventual-stability"}, {"d", m.d},
               {"c", op::to_string(m.c)}, {"trial-bound", trial_bound},
               {"rho-iters", rho_iters}};
      rc.update(commons(g));
      emit(g, "stability", rc, op::to_json(cert));
    } else {
      if (p < 2) throw op::ArgumentError("--zcase requires --p");
      op::Rational cr = parse_rat(c, "c");
      if (cr.get_den() != 1)
        throw op::ArgumentError("--zcase requires an integer --c");
      auto rep = op::zcase_suite(p, cr.get_num(), N);
      ojson rc{{"mode", "zcase"}, {"p", p}, {"c", op::to_string(cr)}, {"N", N}};
      rc.update(commons(g));
      emit(g, "stability", rc, op::to_json(rep));
    }
  }
};

struct FactorCmd {
  long d = 2;
  std::string c, gtext = "z";
  long n = 1, track = 0;
  bool shape = false;
  CLI::App* cmd = nullptr;

  void setup(CLI::App& app) {
    cmd = app.add_subcommand("factor",
                             "factor g(f^n) over Q into certified irreducibles");
    cmd->add_option("--d", d, "map degree");
    cmd->add_option("--c", c, "map constant, rational a/b");
    cmd->add_option("--g", gtext, "outer polynomial (default z, i.e. f^n itself)");
    cmd->add_option("--n", n, "iterate level");
    cmd->add_flag("--shape", shape,
                  "also verify the h(z)h(-z) splitting shape (d = 2 only)");
    cmd->add_option("--track", track,
                    "also list factor counts of f^k for k = 1..track");
  }

  void run(const GlobalOpts& g) {
    Cfg cfg(g.config, cmd);
    cfg.get("d", d);
    cfg.get("c", c);
    cfg.get("g", gtext);
    cfg.get("n", n);
    cfg.get("shape", shape);
    cfg.get("track", track);
    if (n < 1) throw op::ArgumentError("--n must be at least 1");

    op::MapSpec m{d, parse_rat(c, "c"), op::Rational(0)};
    op::RatPoly gp = parse_g(gtext);
    op::RatPoly target = gp.compose(op::iterate_map(m, (int)n));
    auto factors = op::factor_over_Q(target);

    ojson payload{{"poly", op::format_poly(target)},
                  {"degree", target.degree()},
                  {"factorization", ojson::parse(op::to_json(factors))}};
    if (shape) payload["shape_verified"] = op::splitting_shape_verify(gp, m, n, factors);
    if (track > 0) {
      ojson arr = ojson::array();
      for (const auto& [level, count] : op::factor_count_track(m, track))
        arr.push_back(ojson::array({level, count}));
      payload["factor_count_track"] = arr;
    }

    ojson rc{{"d", m.d}, {"c", op::to_string(m.c)}, {"g", op::format_poly(gp)},
             {"n", n}, {"shape", shape}, {"track", track}};
    rc.update(commons(g));
    emit(g, "factor", rc, payload.dump(2));
  }
};

struct NewtonCmd {
  long d = 2;
  std::string c, p;
  long n = 1;
  CLI::App* cmd = nullptr;

  void setup(CLI::App& app) {
    cmd = app.add_subcommand("newton", "Newton polygon of f^n at a prime p");
    cmd->add_option("--d", d, "map degree");
    cmd->add_option("--c", c, "map constant, rational a/b");
    cmd->add_option("--p", p, "prime");
    cmd->add_option("--n", n, "iterate level");
  }

  void run(const GlobalOpts& g) {
    Cfg cfg(g.config, cmd);
    cfg.get("d", d);
    cfg.get("c", c);
    cfg.get("p", p);
    cfg.get("n", n);
    if (p.empty()) throw op::ArgumentError("--p is required");
    if (n < 1) throw op::ArgumentError("--n must be at least 1");

    op::MapSpec m{d, parse_rat(c, "c"), op::Rational(0)};
    op::BigInt prime = op::parse_bigint(p);
    auto polygon = op::newton_polygon(op::iterate_map(m, (int)n), prime);

    ojson rc{{"d", m.d}, {"c", op::to_string(m.c)}, {"p", op::to_string(prime)},
             {"n", n}};
    rc.update(commons(g));
    emit(g, "newton", rc, op::to_json(polygon));
  }
};

struct RamifyCmd {
  long d = 2, r = 0, N = 8;
  bool kummer = false, tower = false;
  CLI::App* cmd = nullptr;

  void setup(CLI::App& app) {
    cmd = app.add_subcommand(
        "ramify", "ramification of d-th root extensions: one step or the tower");
    cmd->add_option("--d", d, "root degree");
    cmd->add_option("--r", r, "valuation of the base element");
    cmd->add_option("--N", N, "tower levels for --tower");
    cmd->add_flag("--kummer", kummer, "single Kummer step degree d/gcd(d, r)");
    cmd->add_flag("--tower", tower, "e and k sequences up the root tower");
  }

  void run(const GlobalOpts& g) {
    Cfg cfg(g.config, cmd);
    cfg.get("d", d);
    cfg.get("r", r);
    cfg.get("N", N);
    cfg.get("kummer", kummer);
    cfg.get("tower", tower);
    if (kummer + tower != 1)
      throw op::ArgumentError("choose exactly one of --kummer, --tower");
    if (!cfg.provided("r")) throw op::ArgumentError("--r is required");

    if (kummer) {
      long degree = op::kummer_ram_degree(d, r);
      ojson payload{{"d", d}, {"r", r}, {"degree", degree}};
      ojson rc{{"mode", "kummer"}, {"d", d}, {"r", r}};
      rc.update(commons(g));
      emit(g, "ramify", rc, payload.dump(2));
    } else {
      auto t = op::ram_tower(d, r, N);
      ojson rc{{"mode", "tower"}, {"d", d}, {"r", r}, {"N", N}};
      rc.update(commons(g));
      emit(g, "ramify", rc, op::to_json(t));
    }
  }
};

struct GaloisCmd {
  long d = 2, t0 = 1;
  std::string kernels = "full,full";
  bool exact = false, mc = false, extinction = false, conditional = false,
       psi = false;
  long samples = 10000, N = 30, level = 0, m_cap = 256, width_cap = 4096;
  CLI::App* cmd = nullptr;

  void setup(CLI::App& app) {
    cmd = app.add_subcommand(
        "galois-sim",
        "tower-automorphism process: fixed-point laws, sampling, extinction");
    cmd->add_option("--d", d, "arity of the tower");
    cmd->add_option("--t0", t0, "roots at the base level");
    cmd->add_option("--kernels", kernels,
                    "per-level kernels, e.g. full,full or full,sum1");
    cmd->add_flag("--exact", exact, "exact fixed-point law per level");
    cmd->add_flag("--mc", mc, "Monte Carlo survival estimates");
    cmd->add_flag("--extinction", extinction, "extinction probabilities q_n");
    cmd->add_flag("--conditional-check", conditional,
                  "one-step conditionals, martingale identity, closed form");
    cmd->add_flag("--psi-image", psi, "image of the level-sum homomorphism");
    cmd->add_option("--samples", samples, "Monte Carlo sample count");
    cmd->add_option("--N", N, "levels for --extinction");
    cmd->add_option("--level", level, "level for --psi-image (default: depth)");
    cmd->add_option("--m-cap", m_cap, "largest parent count for --conditional-check");
    cmd->add_option("--width-cap", width_cap, "largest support for --exact");
  }

  void run(const GlobalOpts& g) {
    Cfg cfg(g.config, cmd);
    cfg.get("d", d);
    cfg.get("t0", t0);
    cfg.get("kernels", kernels);
    cfg.get("exact", exact);
    cfg.get("mc", mc);
    cfg.get("extinction", extinction);
    cfg.get("conditional-check", conditional);
    cfg.get("psi-image", psi);
    cfg.get("samples", samples);
    cfg.get("N", N);
    cfg.get("level", level);
    cfg.get("m-cap", m_cap);
    cfg.get("width-cap", width_cap);
    if (exact + mc + extinction + conditional + psi != 1)
      throw op::ArgumentError(
          "choose exactly one of --exact, --mc, --extinction, "
          "--conditional-check, --psi-image");

    if (extinction) {
      auto curve = op::extinction_curve(d, t0, N);
      ojson rc{{"mode", "extinction"}, {"d", d}, {"t0", t0}, {"N", N}};
      rc.update(commons(g));
      emit(g, "galois-sim", rc, op::to_json(curve), op::to_csv(curve));
      return;
    }
    if (conditional) {
      // deep enough that the last level exposes m_cap parents
      long depth = 1, nodes = t0;
      while (nodes < m_cap && depth < 48) {
        nodes *= d;
        ++depth;
      }
      auto rep = op::conditional_check(op::full_tower(d, t0, depth), m_cap);
      ojson rc{{"mode", "conditional-check"}, {"d", d}, {"t0", t0},
               {"m-cap", m_cap}};
      rc.update(commons(g));
      emit(g, "galois-sim", rc, op::to_json(rep));
      return;
    }

    auto ks = parse_kernels(kernels);
    auto spec = op::full_tower(d, t0, (long)ks.size());
    spec.kernels = ks;
    op::validate_tower(spec);

    if (exact) {
      auto levels = op::exact_Yn_distribution(spec, width_cap);
      ojson rc{{"mode", "exact"}, {"d", d}, {"t0", t0},
               {"kernels", kernel_names(ks)}, {"width-cap", width_cap}};
      rc.update(commons(g));
      emit(g, "galois-sim", rc, op::to_json(levels), op::to_csv(levels));
      return;
    }
    if (psi) {
      long at = level == 0 ? spec.depth() : level;
      long gen = op::psi_image(spec, at);
      std::vector<long> image{0};
      for (long x = gen; gen > 0 && x < d; x += gen) image.push_back(x);
      ojson payload{{"level", at}, {"generator", gen}, {"image", image}};
      ojson rc{{"mode", "psi-image"}, {"d", d}, {"t0", t0},
               {"kernels", kernel_names(ks)}, {"level", at}};
      rc.update(commons(g));
      emit(g, "galois-sim", rc, payload.dump(2));
      return;
    }

    // Monte Carlo: one independent generator per sample index, so the result
    // does not depend on how samples are split across threads.
    if (samples < 1) throw op::ArgumentError("--samples must be positive");
    long depth = spec.depth();
    int T = (int)std::max(1L, std::min<long>(g.threads, samples));
    std::vector<std::vector<long>> alive(T, std::vector<long>(depth + 1, 0));
    std::vector<std::map<long, long>> hist(T);
    auto worker = [&](int t) {
      for (long i = t; i < samples; i += T) {
        op::Rng rng(g.seed + 0x9E3779B97F4A7C15ULL * (std::uint64_t)(i + 1));
        auto e = op::sample_uniform(spec, rng);
        for (long lev = 0; lev <= depth; ++lev)
          if (op::fixed_nodes(e, spec, lev) > 0) alive[t][lev]++;
        hist[t][op::fixed_leaves(e, spec)]++;
      }
    };
    if (T == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < T; ++t) pool.emplace_back(worker, t);
      for (auto& th : pool) th.join();
    }

    ojson rows = ojson::array();
    std::ostringstream csv;
    csv << "level,alive,samples,survival,survival_approx\n";
    for (long lev = 0; lev <= depth; ++lev) {
      long a = 0;
      for (int t = 0; t < T; ++t) a += alive[t][lev];
      op::Rational frac(a, samples);
      frac.canonicalize();
      double approx = (double)a / (double)samples;
      rows.push_back(ojson{{"level", lev},
                           {"alive", a},
                           {"survival", op::to_string(frac)},
                           {"survival_approx", approx}});
      csv << lev << ',' << a << ',' << samples << ',' << op::to_string(frac)
          << ',' << ojson(approx).dump() << '\n';
    }
    std::map<long, long> merged;
    for (int t = 0; t < T; ++t)
      for (const auto& [k, v] : hist[t]) merged[k] += v;
    ojson histogram = ojson::object();
    for (const auto& [k, v] : merged) histogram[std::to_string(k)] = v;

    ojson payload{{"samples", samples}, {"levels", rows},
                  {"leaf_histogram", histogram}};
    ojson rc{{"mode", "mc"}, {"d", d}, {"t0", t0},
             {"kernels", kernel_names(ks)}, {"samples", samples}};
    rc.update(commons(g));
    emit(g, "galois-sim", rc, payload.dump(2), csv.str());
  }
};

struct DensityCmd {
  long d = 2;
  std::string c, a0 = "0", classes, checkpoints;
  long X = 1000, chunk = 1L << 18;
  CLI::App* cmd = nullptr;

  void setup(CLI::App& app) {
    cmd = app.add_subcommand(
        "density", "fraction of primes up to X dividing the orbit, by class");
    cmd->add_option("--d", d, "map degree");
    cmd->add_option("--c", c, "map constant, rational a/b");
    cmd->add_option("--a0", a0, "starting point");
    cmd->add_option("--X", X, "sieve bound");
    cmd->add_option("--classes", classes, "residue classes, e.g. 1%3,2%3");
    cmd->add_option("--checkpoints", checkpoints,
                    "cumulative curve cut points, e.g. 1000,10000,100000");
    cmd->add_option("--chunk", chunk, "sieve segment length");
  }

  void run(const GlobalOpts& g) {
    Cfg cfg(g.config, cmd);
    cfg.get("d", d);
    cfg.get("c", c);
    cfg.get("a0", a0);
    cfg.get("X", X);
    cfg.get("classes", classes);
    cfg.get("checkpoints", checkpoints);
    cfg.get("chunk", chunk);

    op::MapSpec m{d, parse_rat(c, "c"), parse_rat(a0, "a0")};
    op::SieveConfig scfg;
    scfg.X = X;
    scfg.chunk = chunk;
    scfg.threads = g.threads;
    if (!classes.empty()) scfg.classes = parse_classes(classes);

    op::DensityReport rep;
    std::vector<long> cps;
    if (!checkpoints.empty()) {
      cps = parse_long_list(checkpoints, "checkpoints");
      rep = op::density_curve(m, cps, scfg);
    } else {
      rep = op::density_estimate(m, scfg);
    }

    ojson rc{{"d", m.d}, {"c", op::to_string(m.c)}, {"a0", op::to_string(m.a0)},
             {"X", rep.X}, {"chunk", chunk}};
    if (scfg.classes) rc["classes"] = class_names(*scfg.classes);
    if (!cps.empty()) rc["checkpoints"] = cps;
    rc.update(commons(g));
    emit(g, "density", rc, op::to_json(rep), op::to_csv(rep));
  }
};

struct WitnessCmd {
  long d = 2;
  std::string c, gtext = "z";
  long n = 0;
  std::uint64_t trial_bound = 100000, rho_iters = 2000000;
  CLI::App* cmd = nullptr;

  void setup(CLI::App& app) {
    cmd = app.add_subcommand(
        "witness", "smallest prime showing the level-n extension is maximal");
    cmd->add_option("--d", d, "map degree");
    cmd->add_option("--c", c, "map constant, rational a/b");
    cmd->add_option("--g", gtext, "outer polynomial");
    cmd->add_option("--n", n, "level to witness (>= 2)");
    cmd->add_option("--trial-bound", trial_bound, "trial division bound");
    cmd->add_option("--rho-iters", rho_iters, "Pollard rho step budget");
  }

  void run(const GlobalOpts& g) {
    Cfg cfg(g.config, cmd);
    cfg.get("d", d);
    cfg.get("c", c);
    cfg.get("g", gtext);
    cfg.get("n", n);
    cfg.get("trial-bound", trial_bound);
    cfg.get("rho-iters", rho_iters);

    op::MapSpec m{d, parse_rat(c, "c"), op::Rational(0)};
    op::RatPoly gp = parse_g(gtext);
    op::FactorBudget budget{trial_bound, rho_iters, g.seed};
    auto res = op::maximality_witness(gp, m, n, budget);

    ojson rc{{"d", m.d}, {"c", op::to_string(m.c)}, {"g", op::format_poly(gp)},
             {"n", n}, {"trial-bound", trial_bound}, {"rho-iters", rho_iters}};
    rc.update(commons(g));
    emit(g, "witness", rc, op::to_json(res));
  }
};

}  // namespace

int main(int argc, char** argv) {
  GlobalOpts g;
  CLI::App app{"orbitprimes: arithmetic experiments on orbits of z^d + c"};
  app.fallthrough();
  app.set_version_flag("--version", std::string(op::kVersion));
  app.add_option("--seed", g.seed, "64-bit seed, echoed into output metadata");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--output", g.output, "output file (default: stdout)");
  app.add_option("--threads", g.threads,
                 "worker threads; results never depend on this");
  app.add_option("--config", g.config_path,
                 "JSON config file; command-line flags take precedence");
  app.require_subcommand(0, 1);

  OrbitCmd orbit;
  RdsCmd rds;
  StabilityCmd stability;
  FactorCmd factor;
  NewtonCmd newton;
  RamifyCmd ramify;
  GaloisCmd galois;
  DensityCmd density;
  WitnessCmd witness;
  orbit.setup(app);
  rds.setup(app);
  stability.setup(app);
  factor.setup(app);
  newton.setup(app);
  ramify.setup(app);
  galois.setup(app);
  density.setup(app);
  witness.setup(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  }

  try {
    if (!g.config_path.empty()) g.config = load_config(g.config_path);
    Cfg cfg(g.config, &app);
    cfg.get("seed", g.seed);
    cfg.get("format", g.format);
    cfg.get("output", g.output);
    cfg.get("threads", g.threads);
    if (g.format != "json" && g.format != "csv" && g.format != "text")
      throw op::ArgumentError("--format must be json, csv, or text");
    if (g.threads == 0) {
      if (const char* env = std::getenv("ORBITPRIMES_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1 && v <= 64) g.threads = (int)v;
      }
    }
    if (g.threads == 0) {
      unsigned hc = std::thread::hardware_concurrency();
      g.threads = hc == 0 ? 1 : (int)std::min(hc, 64u);
    }
    if (g.threads < 1 || g.threads > 64)
      throw op::ArgumentError("--threads must be between 1 and 64");

    if (orbit.cmd->parsed()) {
      orbit.run(g);
    } else if (rds.cmd->parsed()) {
      rds.run(g);
    } else if (stability.cmd->parsed()) {
      stability.run(g);
    } else if (factor.cmd->parsed()) {
      factor.run(g);
    } else if (newton.cmd->parsed()) {
      newton.run(g);
    } else if (ramify.cmd->parsed()) {
      ramify.run(g);
    } else if (galois.cmd->parsed()) {
      galois.run(g);
    } else if (density.cmd->parsed()) {
      density.run(g);
    } else if (witness.cmd->parsed()) {
      witness.run(g);
    } else {
      std::cerr << app.help() << std::flush;
      return 2;
    }
  } catch (const op::ArgumentError& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const op::CapabilityError& e) {
    std::cerr << "capability error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
