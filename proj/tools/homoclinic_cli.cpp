#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "homoclinic/acceptance.hpp"
#include "homoclinic/errors.hpp"
#include "homoclinic/homoclinic.hpp"
#include "homoclinic/pseudocover.hpp"
#include "homoclinic/random.hpp"
#include "homoclinic/shatter.hpp"
#include "homoclinic/spectra.hpp"
#include "homoclinic/symcover.hpp"
#include "homoclinic/xf_point.hpp"

using namespace homoclinic;
using json = nlohmann::json;

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitAcceptance = 3;

/// Shared flags; --config fills whichever of these the command line left unset.
struct RunConfig {
  std::string poly;
  double tol = 1e-9;
  long window = 64;
  std::uint64_t seed = 1;
  long trials = 1000;
  std::string format = "text";
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string short_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string complex_str(Complex z) {
  return num(z.real()) + (z.imag() < 0 ? "-" : "+") + num(std::abs(z.imag())) + "i";
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("not a number: '" + item + "'");
    }
    if (used != item.size()) throw InvalidArgument("not a number: '" + item + "'");
    out.push_back(x);
  }
  return out;
}

std::vector<std::int64_t> parse_ints(const std::string& text) {
  std::vector<std::int64_t> out;
  for (double x : parse_doubles(text)) {
    if (x != std::floor(x)) throw InvalidArgument("not an integer: " + num(x));
    out.push_back(static_cast<std::int64_t>(x));
  }
  return out;
}

/// "a+bi", "a-bi", "a", "bi"
Complex parse_complex(std::string s) {
  std::erase(s, ' ');
  if (s.empty()) throw InvalidArgument("empty complex number");
  if (s.back() != 'i') return {parse_doubles(s).at(0), 0.0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  auto part = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_doubles(t).at(0);
  };
  if (split == std::string::npos) return {0.0, part(s)};
  return {parse_doubles(s.substr(0, split)).at(0), part(s.substr(split))};
}

/// "lo..hi"
std::vector<std::int64_t> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) throw InvalidArgument("alphabet must look like lo..hi");
  const auto lo = parse_ints(s.substr(0, dots)).at(0);
  const auto hi = parse_ints(s.substr(dots + 2)).at(0);
  if (hi < lo) throw InvalidArgument("empty alphabet range");
  std::vector<std::int64_t> out;
  for (auto a = lo; a <= hi; ++a) out.push_back(a);
  return out;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

/// Writes to the named file, or stdout when the name is empty or "-".
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw InvalidArgument("cannot write " + path);
    }
  }
  std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

LaurentPoly need_poly(const RunConfig& cfg) {
  if (cfg.poly.empty()) throw InvalidArgument("no polynomial given");
  return LaurentPoly::parse(cfg.poly);
}

HomoclinicData make_data(const RunConfig& cfg, long window = 8) {
  const LaurentPoly f = need_poly(cfg);
  return HomoclinicData(f, analyze(f, cfg.tol), window);
}

json flags_json(const SpectrumFlags& fl) {
  json j = {{"expansive", fl.expansive}, {"cyclotomic", fl.cyclotomic}, {"pisot", fl.pisot}, {"salem", fl.salem}};
  j["totally_irreducible"] = fl.totally_irreducible ? json(*fl.totally_irreducible) : json(nullptr);
  return j;
}

// ---- classify / entropy / periodic ----

void cmd_classify(const RunConfig& cfg) {
  const Spectrum s = analyze(need_poly(cfg), cfg.tol);
  if (cfg.format == "json") {
    json roots = json::array();
    for (std::size_t i = 0; i < s.roots.size(); ++i)
      roots.push_back({{"re", s.roots[i].real()}, {"im", s.roots[i].imag()}, {"abs", std::abs(s.roots[i])},
                       {"class", to_string(s.tags[i])}});
    json j = {{"poly", s.poly.to_string()}, {"roots", roots}, {"flags", flags_json(s.flags)},
              {"entropy_roots", s.entropy_roots}, {"entropy_integral", s.entropy_integral},
              {"warnings", s.warnings}};
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::vector<std::string> words = {s.flags.expansive ? "hyperbolic" : "nonhyperbolic"};
  if (s.flags.pisot) words.push_back("Pisot");
  if (s.flags.salem) words.push_back("Salem");
  if (s.flags.cyclotomic) words.push_back("cyclotomic");
  std::string line;
  for (const auto& w : words) line += (line.empty() ? "" : ", ") + w;
  std::cout << line << ", entropy " << num(s.entropy_roots) << '\n';
  for (std::size_t i = 0; i < s.roots.size(); ++i)
    std::cout << "  " << to_string(s.tags[i]) << "  " << complex_str(s.roots[i]) << "  |theta| = "
              << num(std::abs(s.roots[i])) << '\n';
  for (const auto& w : s.warnings) std::cout << "warning: " << w << '\n';
}

void cmd_entropy(const RunConfig& cfg, int quad) {
  const LaurentPoly f = need_poly(cfg);
  const Spectrum s = analyze(f, cfg.tol, quad);
  if (cfg.format == "json") {
    std::cout << json{{"poly", s.poly.to_string()}, {"entropy_roots", s.entropy_roots},
                      {"entropy_integral", s.entropy_integral},
                      {"gap", std::abs(s.entropy_roots - s.entropy_integral)}}
                     .dump(2)
              << '\n';
    return;
  }
  std::cout << "entropy (roots)    " << num(s.entropy_roots) << '\n'
            << "entropy (integral) " << num(s.entropy_integral) << '\n'
            << "gap                " << short_num(std::abs(s.entropy_roots - s.entropy_integral)) << '\n';
}

void cmd_periodic(const RunConfig& cfg, long kmax, const std::string& csv) {
  if (kmax < 1) throw InvalidArgument("--kmax must be positive");
  const PeriodicGrowth g = periodic_growth(need_poly(cfg), kmax);
  if (!csv.empty()) {
    Sink sink(csv);
    sink.out() << "# homoclinic periodic v1\nk,count,log_rate\n";
    for (const auto& p : g.points) sink.out() << p.k << ',' << p.count << ',' << num(p.log_rate) << '\n';
  }
  if (csv.empty() || csv != "-") {
    for (const auto& p : g.points) std::cout << "P_" << p.k << " = " << p.count << "  (1/k) log = " << short_num(p.log_rate) << '\n';
    std::cout << "entropy " << num(g.entropy) << ", final gap " << short_num(g.final_gap) << '\n';
  }
}

// ---- homoclinic ----

void cmd_homoclinic(const RunConfig& cfg, bool exact, const std::string& csv) {
  const LaurentPoly f = need_poly(cfg);
  if (exact) {
    const RationalHomoclinic r = exact_one_sided(f, cfg.window);
    std::cout << "w" << (r.side == Side::minus ? "-" : "+") << " (exact)\n";
    for (long n = r.values.lo(); n <= r.values.hi(); ++n)
      std::cout << n << ' ' << to_string(r.values[n]) << '\n';
    return;
  }
  const HomoclinicData hd(f, analyze(f, cfg.tol), cfg.window);
  Sink sink(csv.empty() ? "-" : csv);
  auto& out = sink.out();
  if (!csv.empty()) out << "# homoclinic homoclinic v1\n";
  out << (csv.empty() ? "n w_plus w_minus w_circ\n" : "n,w_plus,w_minus,w_circ\n");
  const char sep = csv.empty() ? ' ' : ',';
  for (long n = -cfg.window; n <= cfg.window; ++n)
    out << n << sep << num(hd.plus(n)) << sep << num(hd.minus(n)) << sep << num(hd.circ(n)) << '\n';
}

// ---- symbolic covers ----

void cmd_encode(const RunConfig& cfg, const std::string& point, bool beta, long lo, long hi) {
  const HomoclinicData hd = make_data(cfg);
  const LaurentPoly& f = hd.poly();
  const long m = f.degree();
  const auto base = parse_doubles(point);
  if (static_cast<long>(base.size()) != m) throw InvalidArgument("--point needs exactly deg f = " + std::to_string(m) + " coordinates");
  if (hi < lo) throw InvalidArgument("--hi must be at least --lo");
  // digits are produced on a window padded by d so that xi(v) is exact at 0..m-1
  const long d = decay_margin(hd, static_cast<double>(one_norm(f)), cfg.tol * 1e-2);
  const long a = std::min(lo, 0L) - d;
  const long b = std::max(hi, m - 1) + d;
  CoverSeq v;
  if (beta) {
    const long burn = 40;
    const XfPoint x = extend_point(f, base, a - burn, b + m - 1);
    v = beta_encode(hd, x, a, b, burn).digits;
  } else {
    v = decode(f, extend_point(f, base, a, b + m), 1e-8);
  }
  const IntWindow s = v.v.slice(lo, hi);
  const XfPoint y = xi(hd, v, 0, m - 1, 1e-8);
  double err = 0.0;
  for (long k = 0; k < m; ++k) err = std::max(err, torus_distance(y.at(k), Torus(base[static_cast<std::size_t>(k)])));
  if (cfg.format == "json") {
    std::cout << json{{"lo", lo}, {"hi", hi}, {"symbols", std::vector<std::int64_t>(s.values().begin(), s.values().end())},
                      {"reconstruction_error", err}}
                     .dump()
              << '\n';
    return;
  }
  std::cout << "lo " << lo << '\n';
  for (long k = lo; k <= hi; ++k) std::cout << (k == lo ? "" : ",") << s[k];
  std::cout << "\nreconstruction error " << short_num(err) << '\n';
}

void cmd_decode(const RunConfig& cfg, const std::string& symbols, long lo, bool periodic) {
  const HomoclinicData hd = make_data(cfg);
  const long m = hd.poly().degree();
  const auto vals = parse_ints(symbols);
  if (vals.empty()) throw InvalidArgument("--symbols is empty");
  const long p = static_cast<long>(vals.size());
  const Tail tail = periodic ? Tail::periodic(p) : Tail::zero();
  const CoverSeq v{IntWindow(lo, vals, tail), std::max<std::int64_t>(sup_norm(IntWindow(lo, vals)), 1)};
  const XfPoint x = xi(hd, v, 0, m - 1, cfg.tol);
  if (cfg.format == "json") {
    std::vector<double> c;
    for (long k = 0; k < m; ++k) c.push_back(x.at(k).value());
    std::cout << json{{"point", c}}.dump() << '\n';
    return;
  }
  for (long k = 0; k < m; ++k) std::cout << (k ? "," : "") << num(x.at(k).value());
  std::cout << '\n';
}

void cmd_roundtrip(const RunConfig& cfg) {
  const HomoclinicData hd = make_data(cfg);
  const LaurentPoly& f = hd.poly();
  const long m = f.degree();
  const long w = decay_margin(hd, static_cast<double>(one_norm(f)), 1e-11) + m + 1;
  double worst = 0.0;
  std::int64_t biggest = 0;
  for (long i = 0; i < cfg.trials; ++i) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(i));
    const XfPoint x = random_point(f, -w, w + m, rng);
    const CoverSeq v = decode(f, x);
    biggest = std::max(biggest, sup_norm(v.v));
    worst = std::max(worst, point_distance(x, xi(hd, v, 0, m - 1), 0, m));
  }
  std::cout << cfg.trials << " samples, max error " << short_num(worst) << ", max |symbol| " << biggest
            << " (||f||_1 = " << one_norm(f) << ")\n";
  if (!(worst < 1e-8) || biggest > one_norm(f)) throw NumericalError("round trip exceeded tolerance");
}

void cmd_shadow(const RunConfig& cfg, const std::string& blocks_path, double eps, std::optional<long> period) {
  const HomoclinicData hd = make_data(cfg);
  const json j = read_json(blocks_path);
  if (!j.is_array()) throw InvalidArgument("block file must hold an array of {lo, hi, point}");
  std::vector<ShadowBlock> blocks;
  try {
    for (const auto& b : j) blocks.push_back({b.at("lo").get<long>(), b.at("hi").get<long>(), b.at("point").get<std::vector<double>>()});
  } catch (const json::exception& e) {
    throw InvalidArgument(blocks_path + ": " + e.what());
  }
  const ShadowResult r = specification_shadow(hd, blocks, eps, period);
  json out = {{"n_eps", r.n_eps}, {"r", r.r}, {"block_errors", r.block_errors}};
  std::vector<double> y;
  for (long k = 0; k < hd.poly().degree(); ++k) y.push_back(r.y.at(k).value());
  out["point"] = y;
  if (period) {
    out["period"] = *period;
    out["period_residual"] = r.period_residual;
  }
  std::cout << out.dump(2) << '\n';
}

// ---- pseudo-covers ----

RealWindow lift(const XfPoint& x) {
  std::vector<double> v;
  for (const auto& t : x.coords.values()) v.push_back(t.value());
  return RealWindow(x.lo(), std::move(v));
}

void cmd_recover(const RunConfig& cfg) {
  const HomoclinicData hd = make_data(cfg);
  const LaurentPoly& f = hd.poly();
  const long w = 80;
  double worst = 0.0;
  double c = 0.0;
  for (long i = 0; i < cfg.trials; ++i) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(i));
    const XfPoint x = random_point(f, -w, w, rng);
    const CoverSeq z = sample_Zf(f, x);
    const CorrectionReport rep = central_correction(hd, lift(x), -30, 30);
    const RealWindow img = xi_star_bar(hd, z, -30, 30);
    for (long n = -30; n <= 30; ++n) worst = std::max(worst, torus_distance(Torus(img[n] - rep.w.at(n)), x.at(n)));
    c = std::max(c, rep.correction_norm);
  }
  std::cout << cfg.trials << " samples, max recovery error " << short_num(worst) << ", max correction norm "
            << short_num(c) << '\n';
  if (!(worst < 1e-7)) throw NumericalError("recovery exceeded tolerance");
}

void cmd_cocycle(const RunConfig& cfg) {
  const HomoclinicData hd = make_data(cfg);
  const std::int64_t norm = one_norm(hd.poly());
  double worst = 0.0;
  for (long i = 0; i < cfg.trials; ++i) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(i));
    const long a = rng.integer(-20, 20);
    const long b = rng.integer(-20, 20);
    std::vector<std::int64_t> vals;
    for (int k = 0; k < 15; ++k) vals.push_back(rng.integer(-norm, norm));
    const IntWindow v(-7, vals, Tail::zero());
    const CentralVector lhs = cocycle_d(hd, a, v.shifted(b)) + cocycle_d(hd, b, v).shifted(a);
    worst = std::max(worst, lhs.distance(cocycle_d(hd, a + b, v)));
  }
  std::cout << cfg.trials << " trials, max cocycle defect " << short_num(worst) << '\n';
  if (!(worst < 1e-10)) throw NumericalError("cocycle defect exceeded tolerance");
}

void cmd_zf_entropy(const RunConfig& cfg, long n, long samples) {
  const WindowEntropy e = zf_window_entropy(need_poly(cfg), n, samples, cfg.seed);
  std::cout << "# homoclinic zf-entropy v1\nsamples,distinct,estimate\n";
  for (const auto& [s, d, est] : e.checkpoints) std::cout << s << ',' << d << ',' << num(est) << '\n';
  std::cerr << "estimate " << num(e.entropy) << " from " << e.distinct << " distinct words\n";
}

/// v + v-bar with v in Z-bar_f and v-bar the constant ||f||_1 sequence.
void cmd_vl(const RunConfig& cfg, std::int64_t L) {
  const HomoclinicData hd = make_data(cfg);
  const LaurentPoly& f = hd.poly();
  const std::int64_t norm = one_norm(f);
  if (L <= 2 * norm) std::cerr << "note: L = " << L << " does not exceed 2||f||_1 = " << 2 * norm << '\n';
  const long w = 80;
  const CoverSeq bar{IntWindow(0, {norm}, Tail::periodic(1)), norm};
  const RealWindow shift = xi_star_bar(hd, bar, -30, 30);
  double worst = 0.0;
  std::int64_t lo = L;
  std::int64_t hi = -1;
  for (long i = 0; i < cfg.trials; ++i) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(i));
    const XfPoint x = random_point(f, -w, w, rng);
    CoverSeq z = sample_Zf(f, x);
    for (auto& s : z.v.values()) {
      s += norm;
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    z.alphabet_bound = 2 * norm;
    const CorrectionReport rep = central_correction(hd, lift(x), -30, 30);
    const RealWindow img = xi_star_bar(hd, z, -30, 30);
    for (long n = -30; n <= 30; ++n)
      worst = std::max(worst, torus_distance(Torus(img[n] - shift[n] - rep.w.at(n)), x.at(n)));
  }
  std::cout << cfg.trials << " samples, symbols in [" << lo << ", " << hi << "], inside V_L: "
            << (lo >= 0 && hi < L ? "yes" : "no") << ", max recovery error " << short_num(worst) << '\n';
}

void cmd_disk(const std::string& theta_poly, const std::string& theta_text, double c, long n,
              const std::string& alphabet, const std::string& csv, double grid) {
  Complex theta;
  if (!theta_poly.empty()) {
    const Spectrum s = analyze(LaurentPoly::parse(theta_poly));
    const auto circle = s.roots_of(RootClass::circle);
    const Complex* pick = nullptr;
    for (const auto& z : circle)
      if (z.imag() > 0 && (!pick || z.imag() > pick->imag())) pick = &z;
    if (!pick) throw InvalidArgument("--theta-poly has no nonreal root on the unit circle");
    theta = *pick;
  } else if (!theta_text.empty()) {
    theta = parse_complex(theta_text);
  } else {
    throw InvalidArgument("give --theta-poly or --theta");
  }
  if (std::abs(std::abs(theta) - 1.0) > 1e-9) throw InvalidArgument("theta must lie on the unit circle");
  const auto letters = parse_range(alphabet);
  if (!csv.empty()) {
    Sink sink(csv);
    sink.out() << "# homoclinic disk v1\nN,count,entropy\n";
    for (long k = 1; k <= n; ++k) {
      const DiskCount d = disk_count(theta, c, letters, k, grid);
      sink.out() << k << ',' << d.count << ',' << num(d.entropy) << '\n';
    }
    return;
  }
  const DiskCount d = disk_count(theta, c, letters, n, grid);
  std::cout << "theta " << complex_str(theta) << ", N " << n << ", count " << d.count << ", entropy "
            << num(d.entropy) << '\n';
}

void cmd_shatter(const std::string& path) {
  const json j = read_json(path);
  int n = 0;
  std::vector<Subset> family;
  auto add = [&](const json& set) {
    if (set.is_number_unsigned()) {
      family.push_back(set.get<Subset>());
      return;
    }
    Subset mask = 0;
    for (const auto& e : set) {
      const int k = e.get<int>();
      if (k < 0 || k >= 20) throw InvalidArgument("elements must lie in 0..19");
      mask |= Subset{1} << k;
    }
    family.push_back(mask);
  };
  try {
    n = j.at("n").get<int>();
    for (const auto& s : j.at("family")) add(s);
  } catch (const json::exception& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
  if (n < 0 || n > 20) throw InvalidArgument("n must lie in 0..20");
  for (Subset s : family)
    if (n < 20 && (s >> n) != 0) throw InvalidArgument("set outside {0..n-1}");
  const SauerShelahCheck c = check_sauer_shelah(family, n);
  json sets = json::array();
  for (Subset t : shattered_sets(family, n)) {
    json e = json::array();
    for (int k = 0; k < n; ++k)
      if ((t >> k) & 1U) e.push_back(k);
    sets.push_back(e);
  }
  std::cout << json{{"family_size", c.family_size}, {"shattered_count", c.shattered}, {"pajor", c.pajor},
                    {"forced_k", c.forced_k}, {"forced_found", c.forced_found}, {"shattered", sets}}
                   .dump()
            << '\n';
}

int cmd_acceptance(const RunConfig& cfg, std::vector<int> only) {
  if (only.empty())
    for (int id = 1; id <= kCriterionCount; ++id) only.push_back(id);
  int failed = 0;
  json report = json::array();
  for (int id : only) {
    const CriterionResult r = run_criterion(id, cfg.seed);
    if (!r.pass) ++failed;
    if (cfg.format == "json")
      report.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
    else
      std::cout << format_result(r) << std::endl;
  }
  if (cfg.format == "json") std::cout << report.dump(2) << '\n';
  return failed == 0 ? 0 : kExitAcceptance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic covers and pseudo-covers of alpha_f via homoclinic points"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string config_path;
  if (const char* s = std::getenv("HOMOCLINIC_SEED")) {
    try {
      cfg.seed = std::stoull(s);
    } catch (const std::exception&) {
      std::cerr << "error: HOMOCLINIC_SEED is not an integer\n";
      return kExitInvalid;
    }
  }

  std::vector<CLI::Option*> shared;
  auto common = [&](CLI::App* sub, bool with_poly = true) {
    if (with_poly) shared.push_back(sub->add_option("poly", cfg.poly, "Polynomial, e.g. \"u^2-u-1\" or \"-1,-1,1\""));
    shared.push_back(sub->add_option("--tol", cfg.tol, "Numerical tolerance")->check(CLI::PositiveNumber));
    shared.push_back(sub->add_option("--seed", cfg.seed, "Seed (falls back to HOMOCLINIC_SEED)"));
    shared.push_back(sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"})));
    sub->add_option("--config", config_path, "JSON run config; command-line flags take precedence");
  };

  auto* classify = app.add_subcommand("classify", "Roots, circle split and classification flags");
  common(classify);

  int quad = 200000;
  auto* entropy = app.add_subcommand("entropy", "Entropy by the root formula and the Mahler integral");
  common(entropy);
  entropy->add_option("--quad", quad, "Integrand evaluation cap")->check(CLI::PositiveNumber);

  long kmax = 30;
  std::string csv;
  auto* periodic = app.add_subcommand("periodic", "Periodic point counts P_k and growth rate");
  common(periodic);
  periodic->add_option("--kmax", kmax, "Largest period");
  periodic->add_option("--csv", csv, "CSV output path ('-' for stdout)");

  bool exact = false;
  auto* homo = app.add_subcommand("homoclinic", "w+, w- and w-circ from partial fractions, with f(sigma-bar) w = delta_0");
  common(homo);
  shared.push_back(homo->add_option("--window", cfg.window, "Index window [-N, N]"));
  homo->add_flag("--exact", exact, "Exact rationals for the one-sided case");
  homo->add_option("--csv", csv, "CSV output path ('-' for stdout)");

  std::string point;
  bool beta = false;
  long lo = -10;
  long hi = 10;
  auto* encode = app.add_subcommand("encode", "Symbols of a point: decode via f(sigma-bar) or beta expansion");
  common(encode);
  encode->add_option("--point", point, "Coordinates x_0,...,x_{m-1}")->required();
  encode->add_flag("--beta", beta, "Two-sided beta expansion (Pisot f, leading coefficient 1)");
  encode->add_option("--lo", lo, "First symbol index");
  encode->add_option("--hi", hi, "Last symbol index");

  std::string symbols;
  bool periodic_tail = false;
  long sym_lo = 0;
  auto* decode_cmd = app.add_subcommand("decode", "Point xi(v) of a symbol sequence");
  common(decode_cmd);
  decode_cmd->add_option("--symbols", symbols, "Comma-separated symbols")->required();
  decode_cmd->add_option("--lo", sym_lo, "Index of the first symbol");
  decode_cmd->add_flag("--periodic", periodic_tail, "Repeat the block periodically instead of padding with zeros");

  auto* roundtrip = app.add_subcommand("roundtrip", "xi(decode(x)) = x over random points");
  common(roundtrip);
  shared.push_back(roundtrip->add_option("--trials", cfg.trials, "Samples"));

  std::string blocks;
  double eps = 1e-3;
  long period = 0;
  auto* shadow = app.add_subcommand("shadow", "Specification shadowing of orbit blocks");
  common(shadow);
  shadow->add_option("--blocks", blocks, "JSON file [{lo, hi, point: [...]}, ...]")->required();
  shadow->add_option("--eps", eps, "Shadowing accuracy")->check(CLI::PositiveNumber);
  auto* period_opt = shadow->add_option("--period", period, "Periodize with this period");

  auto* pseudo = app.add_subcommand("pseudo", "Pseudo-cover experiments for nonexpansive f");
  pseudo->require_subcommand(1);
  auto* recover = pseudo->add_subcommand("recover", "rho(xi-bar*(z) - w) = x with z = f(sigma-bar) x");
  common(recover);
  shared.push_back(recover->add_option("--trials", cfg.trials, "Samples"));
  auto* cocycle = pseudo->add_subcommand("cocycle-check", "Cocycle identity d(m+n, v) = d(m, sigma-bar^n v) + sigma-bar^m d(n, v)");
  common(cocycle);
  shared.push_back(cocycle->add_option("--trials", cfg.trials, "Trials"));
  long window_n = 12;
  long samples = 100000;
  auto* zf = pseudo->add_subcommand("zf-entropy", "Window-entropy estimate of Z-bar_f, (1/N) log #words");
  common(zf);
  zf->add_option("-N", window_n, "Word length")->check(CLI::PositiveNumber);
  zf->add_option("--samples", samples, "Haar samples")->check(CLI::PositiveNumber);
  std::int64_t L = 0;
  auto* vl = pseudo->add_subcommand("vl", "V_L contains Z-bar_f + constant ||f||_1");
  common(vl);
  vl->add_option("-L", L, "Alphabet size L")->required();
  shared.push_back(vl->add_option("--trials", cfg.trials, "Samples"));

  std::string theta_poly;
  std::string theta_text;
  double radius = 2.0;
  long disk_n = 12;
  std::string alphabet = "-1..1";
  double grid = 1e-9;
  auto* disk = app.add_subcommand("disk", "Disk systems: words with bounded partial sums");
  disk->add_option("--theta-poly", theta_poly, "Take theta as a circle root of this polynomial");
  disk->add_option("--theta", theta_text, "theta as a+bi");
  disk->add_option("-c", radius, "Disk radius")->check(CLI::PositiveNumber);
  disk->add_option("-N", disk_n, "Word length")->check(CLI::PositiveNumber);
  disk->add_option("--alphabet", alphabet, "Symbol range lo..hi");
  disk->add_option("--grid", grid, "State merge resolution")->check(CLI::PositiveNumber);
  disk->add_option("--csv", csv, "CSV of counts for lengths 1..N ('-' for stdout)");

  std::string family;
  auto* shatter = app.add_subcommand("shatter", "Shattered sets and the Pajor / Sauer-Shelah bounds");
  shatter->add_option("--family", family, "JSON file {\"n\": n, \"family\": [[elements] or mask, ...]}")->required();

  std::vector<int> only;
  auto* acceptance = app.add_subcommand("acceptance", "Run the acceptance criteria and report pass/fail");
  common(acceptance, false);
  acceptance->add_option("--only", only, "Criterion ids")->check(CLI::Range(1, kCriterionCount));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (!config_path.empty()) {
      const json j = read_json(config_path);
      auto unset = [&](const std::string& name) {
        for (auto* o : shared)
          if (o->get_name() == name || o->check_lname(name) || o->check_name("--" + name))
            if (o->count() > 0) return false;
        return true;
      };
      if (j.contains("poly") && unset("poly")) cfg.poly = j["poly"].get<std::string>();
      if (j.contains("tol") && unset("tol")) cfg.tol = j["tol"].get<double>();
      if (j.contains("window") && unset("window")) cfg.window = j["window"].get<long>();
      if (j.contains("seed") && unset("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
      if (j.contains("trials") && unset("trials")) cfg.trials = j["trials"].get<long>();
      if (j.contains("format") && unset("format")) cfg.format = j["format"].get<std::string>();
      if (!(cfg.tol > 0)) throw InvalidArgument("tol must be positive");
    }
    if (cfg.trials < 1) throw InvalidArgument("--trials must be positive");

    if (*classify) cmd_classify(cfg);
    else if (*entropy) cmd_entropy(cfg, quad);
    else if (*periodic) cmd_periodic(cfg, kmax, csv);
    else if (*homo) {
      if (cfg.window < 1) throw InvalidArgument("--window must be positive");
      cmd_homoclinic(cfg, exact, csv);
    } else if (*encode) cmd_encode(cfg, point, beta, lo, hi);
    else if (*decode_cmd) cmd_decode(cfg, symbols, sym_lo, periodic_tail);
    else if (*roundtrip) cmd_roundtrip(cfg);
    else if (*shadow) cmd_shadow(cfg, blocks, eps, period_opt->count() ? std::optional<long>(period) : std::nullopt);
    else if (*recover) cmd_recover(cfg);
    else if (*cocycle) cmd_cocycle(cfg);
    else if (*zf) cmd_zf_entropy(cfg, window_n, samples);
    else if (*vl) cmd_vl(cfg, L);
    else if (*disk) cmd_disk(theta_poly, theta_text, radius, disk_n, alphabet, csv, grid);
    else if (*shatter) cmd_shatter(family);
    else if (*acceptance) return cmd_acceptance(cfg, only);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return 0;
}
