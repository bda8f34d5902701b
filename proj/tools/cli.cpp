#include "cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qpc/acceleration.hpp"
#include "qpc/error.hpp"
#include "qpc/hyperbolicity.hpp"
#include "qpc/oracles.hpp"
#include "qpc/spectral.hpp"

namespace qpc::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, sep)) out.push_back(part);
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError(what, "not a number: " + s);
}

void require(bool ok, const std::string& what, const std::string& msg) {
  if (!ok) throw CLI::ValidationError(what, msg);
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

LyapunovOptions lyapunov_options(const RunConfig& cfg) {
  LyapunovOptions o;
  o.grid = cfg.grid;
  o.q_max = cfg.q_max;
  o.convergents = cfg.convergents;
  o.refine = cfg.refine;
  return o;
}

AccelerationOptions acceleration_options(const RunConfig& cfg) {
  AccelerationOptions o;
  o.lyapunov = lyapunov_options(cfg);
  o.lyapunov.convergents = 1;
  o.h0 = cfg.h0;
  o.agree_tol = cfg.agree_tol;
  return o;
}

double energy(const RunConfig& cfg, const TorusFunction& v, const Frequency& alpha) {
  if (!cfg.E_in_spectrum) return cfg.E;
  return spectrum_energy_near(v, alpha.value(), cfg.E, cfg.N);
}

CocycleMap make_map(const RunConfig& cfg, const Frequency& alpha) {
  const auto parts = split(cfg.map, ':');
  const std::string kind = parts.empty() ? "" : parts[0];
  if (kind == "schrodinger") {
    const TorusFunction v = make_potential(cfg.potential);
    return schrodinger(v, energy(cfg, v, alpha));
  }
  if (kind == "identity") return CocycleMap::constant(Mat2::identity());
  if (kind == "rotation" && parts.size() == 2)
    return oracles::rotation_cocycle(static_cast<int>(to_double(parts[1], "map")));
  if (kind == "diagonal" && parts.size() == 2) {
    const double x = to_double(parts[1], "map");
    require(x != 0.0, "map", "diagonal entry must be nonzero");
    return CocycleMap::constant(Mat2::diagonal(x, 1.0 / x));
  }
  throw CLI::ValidationError("map", "unknown map: " + cfg.map);
}

std::string profile_svg(const LyapunovProfile& p) {
  const double W = 640, H = 400, ml = 60, mr = 20, mt = 20, mb = 50;
  const double x0 = p.eps.front(), x1 = p.eps.back();
  double y0 = *std::min_element(p.L.begin(), p.L.end());
  double y1 = *std::max_element(p.L.begin(), p.L.end());
  if (y1 - y0 < 1e-9) y1 = y0 + 1.0;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto X = [&](double e) { return ml + (e - x0) / (x1 - x0) * (W - ml - mr); };
  auto Y = [&](double L) { return H - mb - (L - y0) / (y1 - y0) * (H - mt - mb); };

  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(2);
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<defs><clipPath id=\"plot\"><rect x=\"" << ml << "\" y=\"" << mt << "\" width=\""
    << W - ml - mr << "\" height=\"" << H - mt - mb << "\"/></clipPath></defs>\n";

  // guide lines of integer slope through the first sample
  int kmax = 1;
  for (double sl : p.interval_slopes) kmax = std::max(kmax, static_cast<int>(std::ceil(sl + 0.5)));
  kmax = std::min(kmax, 8);
  s << "<g clip-path=\"url(#plot)\" stroke=\"#999\" stroke-dasharray=\"4 3\" fill=\"none\">\n";
  for (int k = 0; k <= kmax; ++k) {
    const double La = p.L.front(), Lb = p.L.front() + kTwoPi * k * (x1 - x0);
    s << "<line x1=\"" << X(x0) << "\" y1=\"" << Y(La) << "\" x2=\"" << X(x1) << "\" y2=\""
      << Y(Lb) << "\"><title>slope " << k << "</title></line>\n";
  }
  s << "</g>\n";
  s << "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < p.eps.size(); ++i) s << X(p.eps[i]) << ',' << Y(p.L[i]) << ' ';
  s << "\"/>\n";
  for (std::size_t i = 0; i < p.eps.size(); ++i)
    s << "<circle cx=\"" << X(p.eps[i]) << "\" cy=\"" << Y(p.L[i]) << "\" r=\"2.5\" fill=\"#1f5fa8\"/>\n";

  s << "<g stroke=\"black\"><line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr
    << "\" y2=\"" << H - mb << "\"/><line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
    << "\" y2=\"" << H - mb << "\"/></g>\n";
  s << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  s.precision(3);
  for (int i = 0; i <= 4; ++i) {
    const double e = x0 + (x1 - x0) * i / 4, L = y0 + (y1 - y0) * i / 4;
    s << "<text x=\"" << X(e) << "\" y=\"" << H - mb + 16 << "\" text-anchor=\"middle\">" << e
      << "</text>\n";
    s << "<text x=\"" << ml - 6 << "\" y=\"" << Y(L) + 4 << "\" text-anchor=\"end\">" << L
      << "</text>\n";
  }
  s << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
    << "\" text-anchor=\"middle\">eps</text>\n";
  s << "<text x=\"16\" y=\"" << (mt + H - mb) / 2 << "\" transform=\"rotate(-90 16 "
    << (mt + H - mb) / 2 << ")\" text-anchor=\"middle\">L(eps)</text>\n";
  s << "</g>\n</svg>\n";
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  f << text;
}

}  // namespace

TorusFunction make_potential(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (spec == "zero") return TorusFunction::constant(0.0);
  if (parts.size() == 2 && parts[0] == "amo")
    return oracles::amo_potential(to_double(parts[1], "potential"));
  if (parts.size() == 3 && parts[0] == "cos")
    return TorusFunction::cosine(static_cast<int>(to_double(parts[1], "potential")),
                                 to_double(parts[2], "potential"));
  try {
    TorusFunction v = load_modes(spec);
    require(v.real_symmetric(), "potential", "potential must be real-symmetric");
    return v;
  } catch (const Error& e) {
    throw CLI::ValidationError("potential", e.what());
  }
}

Frequency make_frequency(const std::string& spec) {
  try {
    if (spec == "golden") return Frequency::golden();
    const auto slash = spec.find('/');
    if (slash != std::string::npos) {
      const double p = to_double(spec.substr(0, slash), "alpha");
      const double q = to_double(spec.substr(slash + 1), "alpha");
      require(p == std::floor(p) && q == std::floor(q) && q > 0, "alpha", "bad fraction " + spec);
      return Frequency::rational(static_cast<long>(p), static_cast<long>(q));
    }
    return Frequency::irrational(to_double(spec, "alpha"));
  } catch (const Error& e) {
    throw CLI::ValidationError("alpha", e.what());
  }
}

RunConfig parse_config(const std::vector<std::string>& args) {
  RunConfig c;
  CLI::App app{"Lyapunov exponents, acceleration and energy classification of one-frequency cocycles"};
  app.set_config("--config", "", "key = value file; flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.add_option("command", c.command, "profile | classify | gradient")
      ->required()
      ->check(CLI::IsMember({"profile", "classify", "gradient"}));
  app.add_option("--potential", c.potential, "amo:<lambda>, zero, cos:<k>:<amp> or a mode file");
  app.add_option("--map", c.map, "schrodinger, rotation:<k>, identity, diagonal:<x>");
  app.add_option("--alpha", c.alpha, "golden, decimal, or p/q");
  app.add_option("--E", c.E, "energy");
  app.add_option("--E_min", c.E_min);
  app.add_option("--E_max", c.E_max);
  app.add_option("--E_count", c.E_count)->check(CLI::Range(1, 100000));
  app.add_option("--E_in_spectrum", c.E_in_spectrum, "snap E to a confirmed eigenvalue");
  app.add_option("--eps_min", c.eps_min);
  app.add_option("--eps_max", c.eps_max);
  app.add_option("--n_pts", c.n_pts)->check(CLI::Range(5, 10000));
  app.add_option("--grid", c.grid, "quadrature points M")->check(CLI::Range(256, 1 << 20));
  app.add_option("--N", c.N, "truncation size")->check(CLI::Range(16, 1 << 16));
  app.add_option("--q_max", c.q_max)->check(CLI::Range(1L, Frequency::kMaxDenominator));
  app.add_option("--convergents", c.convergents)->check(CLI::Range(1, 10));
  app.add_option("--refine", c.refine);
  app.add_option("--h0", c.h0)->check(CLI::Range(1e-6, 1.0));
  app.add_option("--agree_tol", c.agree_tol)->check(CLI::PositiveNumber);
  app.add_option("--L_threshold", c.L_threshold)->check(CLI::PositiveNumber);
  app.add_option("--stratum_delta", c.stratum_delta)->check(CLI::PositiveNumber);
  app.add_option("--j", c.j);
  app.add_option("--eps", c.eps);
  app.add_option("--K", c.K)->check(CLI::Range(0, 64));
  app.add_option("--split_grid", c.split_grid)->check(CLI::Range(8, 1 << 16));
  app.add_option("--output", c.output, "CSV path, - for stdout");
  app.add_option("--svg", c.svg, "profile plot path");
  app.add_option("--threads", c.threads)->check(CLI::Range(0, 1024));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  app.parse(rev);

  require(c.E_max >= c.E_min, "E_max", "empty energy range");
  require(c.eps_max > c.eps_min, "eps_max", "empty eps range");
  make_frequency(c.alpha);
  return c;
}

std::string cmd_profile(const RunConfig& cfg, std::string* svg) {
  const Frequency alpha = make_frequency(cfg.alpha);
  const Cocycle c{alpha, make_map(cfg, alpha)};
  LyapunovOptions opts = lyapunov_options(cfg);
  opts.convergents = 1;
  const LyapunovProfile p = epsilon_profile(c, cfg.eps_min, cfg.eps_max, cfg.n_pts, opts);
  std::string out = "eps,L,slope\n";
  for (std::size_t i = 0; i < p.eps.size(); ++i)
    out += fmt(p.eps[i]) + "," + fmt(p.L[i]) + "," + fmt(p.point_slopes[i]) + "\n";
  if (svg) *svg = profile_svg(p);
  return out;
}

std::string cmd_classify(const RunConfig& cfg) {
  const Frequency alpha = make_frequency(cfg.alpha);
  const TorusFunction v = make_potential(cfg.potential);
  std::vector<double> energies;
  for (int i = 0; i < cfg.E_count; ++i)
    energies.push_back(cfg.E_count == 1 ? cfg.E_min
                                        : cfg.E_min + (cfg.E_max - cfg.E_min) * i / (cfg.E_count - 1));
  ScanOptions o;
  o.classify.lyapunov = lyapunov_options(cfg);
  o.classify.acceleration = acceleration_options(cfg);
  o.classify.L_threshold = cfg.L_threshold;
  o.stratum_delta = cfg.stratum_delta;
  return scan_csv(scan(v, alpha, energies, o));
}

std::string cmd_gradient(const RunConfig& cfg) {
  const Frequency alpha = make_frequency(cfg.alpha);
  const TorusFunction v = make_potential(cfg.potential);
  SplittingOptions split;
  split.grid = cfg.split_grid;
  const PotentialGradient g = potential_gradient(v, energy(cfg, v, alpha), alpha, cfg.j, cfg.eps,
                                                 cfg.K, acceleration_options(cfg), split);
  std::string out = "k,d_cos,d_sin,witness\n";
  for (const auto& e : g.entries) {
    if (e.k < 0) continue;  // cos and sin are even/odd in k
    out += std::to_string(e.k) + "," + fmt(e.d_cos) + "," + fmt(e.d_sin) + "," + fmt(g.witness) + "\n";
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_config(args);
  } catch (const CLI::CallForHelp& e) {
    out << "usage: qpc profile|classify|gradient [--config file] [--key value ...]\n";
    return kOk;
  } catch (const CLI::Error& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigError;
  }
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);

  try {
    std::string csv, svg;
    if (cfg.command == "profile")
      csv = cmd_profile(cfg, cfg.svg.empty() ? nullptr : &svg);
    else if (cfg.command == "classify")
      csv = cmd_classify(cfg);
    else
      csv = cmd_gradient(cfg);
    if (cfg.output == "-")
      out << csv;
    else
      write_file(cfg.output, csv);
    if (!svg.empty()) write_file(cfg.svg, svg);
  } catch (const CLI::Error& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.kind() == ErrorKind::WrongStratum ? kWrongStratum : kNumericalError;
  }
  return kOk;
}

}  // namespace qpc::cli
