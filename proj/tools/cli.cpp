#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "toric/analytic.hpp"
#include "toric/asymptotics.hpp"
#include "toric/enumerate.hpp"
#include "toric/error.hpp"
#include "toric/fan_io.hpp"
#include "toric/heights.hpp"
#include "toric/piecewise_linear.hpp"

namespace toric::cli {

namespace {

using json = nlohmann::ordered_json;

// Twelve significant digits keep output byte-stable across platforms and job counts.
double round12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

json number(double x) { return round12(x); }

json complex_json(Complex z) { return json{{"re", number(z.real())}, {"im", number(z.imag())}}; }

json integer_json(const BigInt& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

json rationals_json(const RatVec& v) {
  auto a = json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

json doubles_json(const std::vector<double>& v) {
  auto a = json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

std::string cone_label(const std::vector<RayId>& cone) {
  std::string s;
  for (auto e : cone) s += (s.empty() ? "" : "_") + std::to_string(e);
  return s;
}

BigInt parse_positive_integer(const std::string& text, const char* what) {
  Rational q = parse_rational(text);
  if (q.get_den() != 1 || q < 1) throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be a positive integer");
  return q.get_num();
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  for (const auto& q : parse_rational_list(text)) out.push_back(q.get_d());
  return out;
}

std::vector<Complex> parse_s(const std::string& text) {
  std::vector<Complex> out;
  for (double x : parse_doubles(text)) out.emplace_back(x, 0.0);
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::InvalidArgument, what);
}

struct Options {
  std::string fan = "p1";
  std::string format;
  std::string B, beta, grid, values, at, point, s, m, cone, x;
  std::string p = "2";
  std::string P = "10000";
  std::string H = "1000";
  double T = 200.0;
  int R = -1;
  unsigned jobs = 1;
  bool boundary = false;
  bool oracle = false;
};

class Runner {
 public:
  Runner(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  Fan fan() const { return load_fan(opt.fan, in_); }

  std::string format(const char* fallback) const { return opt.format.empty() ? fallback : opt.format; }

  void emit(const json& doc) { out_ << doc.dump(2) << '\n'; }

  void fan_check() {
    Fan f = fan();
    emit(json{{"valid", true}, {"dim", f.dim()}, {"rays", f.ray_count()}, {"max_cones", f.max_cones().size()}});
  }

  void fan_make() { out_ << fan_to_json(fan()) << '\n'; }

  void pic() {
    Fan f = fan();
    PicData data = pic_data(f);
    auto factors = json::array();
    bool free = true;
    for (const auto& z : data.invariant_factors) {
      factors.push_back(integer_json(z));
      free = free && z == 1;
    }
    emit(json{{"dim", f.dim()}, {"rays", f.ray_count()}, {"pic_rank", data.pic_rank},
              {"invariant_factors", factors}, {"free", free}});
  }

  void pl_eval() {
    Fan f = fan();
    require(!opt.values.empty() && !opt.at.empty(), "pl eval needs --values and --at");
    PLFunction phi = PLFunction::from_ray_values(f, parse_rational_list(opt.values));
    RatVec n = parse_rational_list(opt.at);
    if (n.size() != static_cast<std::size_t>(f.dim()))
      throw Error(ErrorKind::DimensionMismatch, "--at needs " + std::to_string(f.dim()) + " coordinates");
    Rational v = phi.evaluate(std::span<const Rational>(n));
    if (format("text") == "json") emit(json{{"value", to_string(v)}});
    else out_ << to_string(v) << '\n';
  }

  void height() {
    Fan f = fan();
    require(!opt.point.empty(), "height needs --point");
    TorusPoint x = TorusPoint::parse(opt.point);
    if (x.dim() != static_cast<std::size_t>(f.dim()))
      throw Error(ErrorKind::DimensionMismatch, "point needs " + std::to_string(f.dim()) + " coordinates");
    MultiHeight h = multi_height(f, x);
    if (format("json") == "csv") {
      out_ << "ray,height\n";
      for (std::size_t e = 0; e < h.size(); ++e) out_ << e << ',' << to_string(h[e]) << '\n';
      return;
    }
    Rational anticanonical = 1;
    for (const auto& v : h) anticanonical *= v;
    emit(json{{"point", rationals_json(x.coords())},
              {"heights", rationals_json(h)},
              {"anticanonical", to_string(anticanonical)},
              {"archimedean_cone", f.max_cones()[archimedean_cone(f, x)].ray_ids}});
  }

  RatVec beta(const Fan& f) const {
    require(!opt.beta.empty(), "--beta is required");
    RatVec b = parse_rational_list(opt.beta);
    BoundSpec{BigInt(1), b}.validate(f);
    return b;
  }

  std::vector<BigInt> grid() const {
    require(opt.grid.empty() != opt.B.empty(), "give exactly one of --B and --grid");
    if (!opt.grid.empty()) return parse_grid(opt.grid);
    return {parse_positive_integer(opt.B, "--B")};
  }

  json record_json(const CountRecord& r) const {
    json j{{"B", integer_json(r.B)}, {"torus_count", r.torus_count}};
    auto bounds = json::array();
    for (const auto& n : r.coordinate_bounds) bounds.push_back(integer_json(n));
    j["coordinate_bounds"] = bounds;
    if (opt.boundary) {
      auto strata = json::array();
      for (const auto& [cone, n] : r.stratum_counts) strata.push_back(json{{"cone", cone}, {"count", n}});
      j["strata"] = strata;
      j["boundary_total"] = r.boundary_total();
      j["total"] = r.torus_count + r.boundary_total();
    }
    return j;
  }

  void count() {
    Fan f = fan();
    RatVec b = beta(f);
    auto Bs = grid();
    const std::string fmt = format("json");
    require(fmt == "json" || fmt == "csv", "--format must be json or csv");

    if (opt.oracle) {
      require(!opt.boundary, "--oracle counts torus points only");
      json rows = json::array();
      std::vector<std::pair<BigInt, BigInt>> counts;
      for (const auto& B : Bs) {
        auto n = closed_form_count(f, BoundSpec{B, b});
        if (!n) throw Error(ErrorKind::InvalidArgument, "no closed form for this fan");
        counts.emplace_back(B, *n);
      }
      if (fmt == "csv") {
        out_ << "B,torus_count\n";
        for (const auto& [B, n] : counts) out_ << B.get_str() << ',' << n.get_str() << '\n';
        return;
      }
      json head{{"fan", opt.fan}, {"beta", rationals_json(b)}, {"method", "closed_form"}};
      if (counts.size() == 1) {
        head["B"] = integer_json(counts[0].first);
        head["torus_count"] = integer_json(counts[0].second);
      } else {
        for (const auto& [B, n] : counts) rows.push_back(json{{"B", integer_json(B)}, {"torus_count", integer_json(n)}});
        head["records"] = rows;
      }
      emit(head);
      return;
    }

    auto records = count_grid(f, b, Bs, opt.boundary, CountOptions{opt.jobs});
    if (fmt == "csv") {
      out_ << "B,torus_count";
      if (opt.boundary) {
        out_ << ",boundary_total";
        for (const auto& [cone, n] : records.front().stratum_counts) out_ << ",stratum_" << cone_label(cone);
      }
      out_ << '\n';
      for (const auto& r : records) {
        out_ << r.B.get_str() << ',' << r.torus_count;
        if (opt.boundary) {
          out_ << ',' << r.boundary_total();
          for (const auto& [cone, n] : r.stratum_counts) out_ << ',' << n;
        }
        out_ << '\n';
      }
      return;
    }
    json head{{"fan", opt.fan}, {"beta", rationals_json(b)}, {"method", "enumeration"}};
    if (records.size() == 1) {
      const json record = record_json(records[0]);
      for (const auto& [k, v] : record.items()) head[k] = v;
    } else {
      auto rows = json::array();
      for (const auto& r : records) rows.push_back(record_json(r));
      head["records"] = rows;
    }
    emit(head);
  }

  static json fit_json(const FitResult& fit) {
    return json{{"sigma_hat", number(fit.sigma_hat)},
                {"log_c_hat", number(fit.log_c_hat)},
                {"residual_rms", number(fit.residual_rms)},
                {"points", fit.grid.size()}};
  }

  void fit() {
    Fan f = fan();
    RatVec b = beta(f);
    require(!opt.grid.empty(), "fit needs --grid");
    auto Bs = parse_grid(opt.grid);
    auto records = count_grid(f, b, Bs, opt.boundary, CountOptions{opt.jobs});
    ComparatorReport rep = report(f, b, records);
    const std::string fmt = format("json");
    if (fmt == "csv") {
      out_ << "B,count,ratio_sum_beta,ratio_lp\n";
      for (const auto& row : rep.table.rows) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.12g,%.12g", row.ratio_sum_beta, row.ratio_lp);
        out_ << row.B.get_str() << ',' << row.count << ',' << buf << '\n';
      }
      return;
    }
    require(fmt == "json", "--format must be json or csv");
    auto table = json::array();
    for (const auto& row : rep.table.rows)
      table.push_back(json{{"B", integer_json(row.B)},
                           {"count", row.count},
                           {"ratio_sum_beta", number(row.ratio_sum_beta)},
                           {"ratio_lp", number(row.ratio_lp)}});
    json doc{{"fan", opt.fan},
             {"beta", rationals_json(b)},
             {"sum_beta", to_string(rep.sum_beta)},
             {"lp_exponent", to_string(rep.lp_exponent)},
             {"fit", fit_json(rep.fit)},
             {"table", table},
             {"sum_beta_stable", rep.table.sum_beta_stable},
             {"lp_stable", rep.table.lp_stable}};
    if (opt.boundary) {
      auto strata = json::array();
      for (const auto& [cone, fr] : rep.stratum_fits) {
        json s{{"cone", cone}};
        const json fj = fit_json(fr);
        for (const auto& [k, v] : fj.items()) s[k] = v;
        strata.push_back(s);
      }
      doc["strata"] = strata;
    }
    doc["verdicts"] = rep.verdicts;
    emit(doc);
  }

  std::uint32_t prime_cutoff() const {
    BigInt P = parse_positive_integer(opt.P, "--P");
    require(P >= 2 && P <= 100'000'000, "--P must lie in [2, 1e8]");
    return static_cast<std::uint32_t>(P.get_ui());
  }

  std::uint64_t height_cutoff() const {
    BigInt H = parse_positive_integer(opt.H, "--H");
    require(H.fits_ulong_p(), "--H is too large");
    return H.get_ui();
  }

  std::vector<Complex> s_values(const Fan& f) const {
    require(!opt.s.empty(), "--s is required");
    auto s = parse_s(opt.s);
    if (s.size() != f.ray_count())
      throw Error(ErrorKind::DimensionMismatch, "--s needs " + std::to_string(f.ray_count()) + " values");
    return s;
  }

  static json s_json(const std::vector<Complex>& s) {
    std::vector<double> re;
    for (auto z : s) re.push_back(z.real());
    return doubles_json(re);
  }

  void zeta_qpoly() {
    Fan f = fan();
    QPolynomial q = q_polynomial(f);
    if (format("text") != "json") {
      out_ << q.to_string() << '\n';
      return;
    }
    auto terms = json::array();
    for (const auto& [mono, c] : q.terms()) {
      std::vector<int> names;
      for (auto e : mono) names.push_back(e + 1);
      terms.push_back(json{{"monomial", names}, {"coefficient", c}});
    }
    emit(json{{"fan", opt.fan}, {"q", q.to_string()}, {"terms", terms}});
  }

  void zeta_local() {
    Fan f = fan();
    auto s = s_values(f);
    BigInt p = parse_positive_integer(opt.p, "--p");
    require(p.fits_ulong_p() && mpz_probab_prime_p(p.get_mpz_t(), 30) > 0, "--p must be a prime");
    json doc{{"fan", opt.fan}, {"p", p.get_ui()}, {"s", s_json(s)}, {"value", complex_json(local_factor(f, s, p.get_ui()))}};
    if (opt.R >= 0) {
      doc["R"] = opt.R;
      doc["lattice_sum"] = complex_json(local_lattice_sum(f, s, p.get_ui(), opt.R));
    }
    emit(doc);
  }

  void zeta_arch() {
    Fan f = fan();
    auto s = s_values(f);
    std::vector<double> m = opt.m.empty() ? std::vector<double>(static_cast<std::size_t>(f.dim()), 0.0)
                                          : parse_doubles(opt.m);
    emit(json{{"fan", opt.fan}, {"s", s_json(s)}, {"m", doubles_json(m)}, {"value", complex_json(arch_transform(f, s, m))}});
  }

  void zeta_global() {
    Fan f = fan();
    auto s = s_values(f);
    const auto P = prime_cutoff();
    emit(json{{"fan", opt.fan}, {"s", s_json(s)}, {"P", P}, {"value", complex_json(global_transform(f, s, P))}});
  }

  void zeta_singular() {
    Fan f = fan();
    const auto P = prime_cutoff();
    emit(json{{"fan", opt.fan}, {"P", P}, {"value", number(singular_constant(f, P))}});
  }

  void zeta_direct() {
    Fan f = fan();
    auto s = s_values(f);
    const auto H = height_cutoff();
    emit(json{{"fan", opt.fan}, {"s", s_json(s)}, {"H", H}, {"value", complex_json(toric::zeta_direct(f, s, H, opt.jobs))}});
  }

  void zeta_poisson() {
    Fan f = fan();
    auto s = s_values(f);
    require(opt.T > 0.0, "--T must be positive");
    PoissonResult r = poisson_check(f, s[0].real(), s[1].real(), opt.T, prime_cutoff(), height_cutoff());
    emit(json{{"fan", opt.fan},
              {"s", s_json(s)},
              {"T", number(r.T)},
              {"P", r.P},
              {"H", r.H},
              {"lhs", number(r.lhs)},
              {"rhs", number(r.rhs)},
              {"ratio", number(r.ratio)}});
  }

  void zeta_xfun() {
    require(!opt.cone.empty() && !opt.x.empty(), "zeta xfun needs --cone and --x");
    std::vector<RatVec> gens;
    std::stringstream ss(opt.cone);
    for (std::string part; std::getline(ss, part, ';');) gens.push_back(parse_rational_list(part));
    PolyCone cone(std::move(gens));
    RatVec x = parse_rational_list(opt.x);
    Rational v = x_function(cone, x);
    auto rays = json::array();
    for (const auto& r : cone.dual_rays()) rays.push_back(rationals_json(r));
    emit(json{{"x", rationals_json(x)}, {"dual_rays", rays}, {"value", to_string(v)}, {"approx", number(v.get_d())}});
  }

  Options opt;

 private:
  std::istream& in_;
  std::ostream& out_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Runner runner(in, out);
  Options& o = runner.opt;
  std::function<void()> action;

  CLI::App app{"Rational points of bounded height on smooth projective toric varieties over Q", "toric"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  auto fan_arg = [&](CLI::App* sub) { sub->add_option("fan", o.fan, "builtin name, blowup:<src>:<cone>, file, or - for stdin"); };
  auto add_format = [&](CLI::App* sub, const char* choices) { sub->add_option("--format", o.format, choices); };
  auto bind = [&](CLI::App* sub, void (Runner::*fn)()) { sub->callback([&, fn] { action = [&, fn] { (runner.*fn)(); }; }); };

  auto* fan = app.add_subcommand("fan", "Validate or emit fans");
  fan->require_subcommand(1);
  auto* check = fan->add_subcommand("check", "Validate a fan and summarize it");
  fan_arg(check);
  bind(check, &Runner::fan_check);
  auto* make = fan->add_subcommand("make", "Emit fan JSON");
  fan_arg(make);
  bind(make, &Runner::fan_make);

  auto* pic = app.add_subcommand("pic", "Picard rank and Smith normal form of the ray matrix");
  fan_arg(pic);
  bind(pic, &Runner::pic);

  auto* pl = app.add_subcommand("pl", "Piecewise-linear functions");
  pl->require_subcommand(1);
  auto* eval = pl->add_subcommand("eval", "Evaluate a PL function given by ray values");
  fan_arg(eval);
  eval->add_option("--values", o.values, "ray values, e.g. 1,0,0")->required();
  eval->add_option("--at", o.at, "lattice point, e.g. 2,1")->required();
  add_format(eval, "text|json");
  bind(eval, &Runner::pl_eval);

  auto* height = app.add_subcommand("height", "Exact multi-height of a torus point");
  fan_arg(height);
  height->add_option("--point", o.point, "coordinates, e.g. 3/2,-1/5")->required();
  add_format(height, "json|csv");
  bind(height, &Runner::height);

  auto* count = app.add_subcommand("count", "Count torus points with H_e <= B^beta_e");
  fan_arg(count);
  count->add_option("--B", o.B, "bound");
  count->add_option("--beta", o.beta, "one positive rational per ray")->required();
  count->add_option("--grid", o.grid, "lo:hi:step, lo:hi:geometric:k or a comma list");
  count->add_option("--jobs", o.jobs, "worker threads");
  count->add_flag("--boundary", o.boundary, "also count every boundary stratum");
  count->add_flag("--oracle", o.oracle, "use the closed form (P^n, P1xP1)");
  add_format(count, "json|csv");
  bind(count, &Runner::count);

  auto* fit = app.add_subcommand("fit", "Exponent fit and comparator report");
  fan_arg(fit);
  fit->add_option("--beta", o.beta, "one positive rational per ray")->required();
  fit->add_option("--grid", o.grid, "lo:hi:geometric:k")->required();
  fit->add_option("--jobs", o.jobs, "worker threads");
  fit->add_flag("--boundary", o.boundary, "fit every boundary stratum too");
  add_format(fit, "json|csv");
  bind(fit, &Runner::fit);

  auto* zeta = app.add_subcommand("zeta", "Height zeta function diagnostics");
  zeta->require_subcommand(1);
  auto* qpoly = zeta->add_subcommand("qpoly", "Expanded Q polynomial");
  fan_arg(qpoly);
  add_format(qpoly, "text|json");
  bind(qpoly, &Runner::zeta_qpoly);
  auto* local = zeta->add_subcommand("local", "Local factor at a prime");
  fan_arg(local);
  local->add_option("--p", o.p, "prime");
  local->add_option("--s", o.s, "one real value per ray")->required();
  local->add_option("--R", o.R, "also report the lattice sum truncated at |n| <= R");
  bind(local, &Runner::zeta_local);
  auto* arch = zeta->add_subcommand("arch", "Archimedean transform");
  fan_arg(arch);
  arch->add_option("--s", o.s, "one real value per ray")->required();
  arch->add_option("--m", o.m, "character in M_R (default 0)");
  bind(arch, &Runner::zeta_arch);
  auto* global = zeta->add_subcommand("global", "Truncated global transform");
  fan_arg(global);
  global->add_option("--s", o.s, "one real value per ray")->required();
  global->add_option("--P", o.P, "prime cutoff");
  bind(global, &Runner::zeta_global);
  auto* singular = zeta->add_subcommand("singular", "Singular constant");
  fan_arg(singular);
  singular->add_option("--P", o.P, "prime cutoff");
  bind(singular, &Runner::zeta_singular);
  auto* direct = zeta->add_subcommand("direct", "Partial sum of the height zeta function");
  fan_arg(direct);
  direct->add_option("--s", o.s, "one real value per ray")->required();
  direct->add_option("--H", o.H, "anticanonical height cutoff");
  direct->add_option("--jobs", o.jobs, "worker threads");
  bind(direct, &Runner::zeta_direct);
  auto* poisson = zeta->add_subcommand("poisson", "Direct sum against the spectral integral (d = 1)");
  fan_arg(poisson);
  poisson->add_option("--s", o.s, "s1,s2")->required();
  poisson->add_option("--T", o.T, "integration cutoff");
  poisson->add_option("--P", o.P, "prime cutoff");
  poisson->add_option("--H", o.H, "summation cutoff");
  bind(poisson, &Runner::zeta_poisson);
  auto* xfun = zeta->add_subcommand("xfun", "Laplace integral over a dual cone");
  xfun->add_option("--cone", o.cone, "generators, e.g. \"1,0;1,2\"")->required();
  xfun->add_option("--x", o.x, "interior point")->required();
  bind(xfun, &Runner::zeta_xfun);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    action();
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace toric::cli
