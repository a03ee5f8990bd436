// sympf: invariants, orbit classification, and witness construction for
// linear symplectic forms, plus grid invariants for split nonlinear forms.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sympf/forms.hpp"
#include "sympf/io.hpp"
#include "sympf/orbit4.hpp"

namespace {

using namespace sympf;

// Documented exit codes; see README.
// 0 ok / no gap, 2 parse error, 3 dimension limit, 4 degenerate or invalid
// input, 5 different orbits, 6 invariant gap found, 7 vanishing coefficient,
// 8 evaluation error, 10 internal error.
int exit_code_for(Errc code) {
  switch (code) {
    case Errc::kParse: return 2;
    case Errc::kDimension: return 3;
    case Errc::kDegenerateForm:
    case Errc::kNotSymplectic:
    case Errc::kScalarMultiple:
    case Errc::kDomain: return 4;
    case Errc::kDifferentOrbit: return 5;
    case Errc::kVanishingCoefficient: return 7;
    case Errc::kEval: return 8;
    default: return 10;
  }
}

struct RunConfig {
  std::string mode = "rational";
  double epsilon = kDefaultEps;
  std::uint64_t seed = 0;
  std::string out;

  bool rational() const { return mode == "rational"; }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kParse, "cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(cfg.out, std::ios::binary);
  if (!out) throw Error(Errc::kParse, "cannot write file: " + cfg.out);
  out << text << "\n";
}

// The CLI caps matrix inputs at half-dimension 6; larger Pfaffians are out
// of scope for this tool.
void check_half_dim(int n) {
  if (n > 6) throw Error(Errc::kDimension, "matrices beyond half-dimension 6 are not supported");
}

template <typename S>
SkewMatrix<S> load_skew(const std::string& path);
template <>
SkewMatrix<Rational> load_skew(const std::string& path) {
  auto m = skew_from_json_rational(parse_json(read_file(path)));
  check_half_dim(m.half_dim());
  return m;
}
template <>
SkewMatrix<double> load_skew(const std::string& path) {
  auto m = skew_from_json_float(parse_json(read_file(path)));
  check_half_dim(m.half_dim());
  return m;
}

template <typename S>
Mat<S> load_dense(const std::string& path);
template <>
Mat<Rational> load_dense(const std::string& path) {
  auto m = dense_from_json_rational(parse_json(read_file(path)));
  check_half_dim(m.rows() / 2);
  return m;
}
template <>
Mat<double> load_dense(const std::string& path) {
  auto m = dense_from_json_float(parse_json(read_file(path)));
  check_half_dim(m.rows() / 2);
  return m;
}

template <typename S>
Json scalar_out(const S& x) {
  if constexpr (ScalarTraits<S>::kExact)
    return rational_to_string(x);
  else
    return x;
}

template <typename S>
int run_pfaffian(const RunConfig& cfg, const std::string& path) {
  const SkewMatrix<S> a = load_skew<S>(path);
  Json out{{"n", a.half_dim()}, {"pfaffian", scalar_out(pfaffian(a, cfg.epsilon))}};
  emit(cfg, out.dump());
  return 0;
}

template <typename S>
int run_invariants(const RunConfig& cfg, const std::string& path) {
  const SkewMatrix<S> a = load_skew<S>(path);
  const InvariantVector<S> inv = invariants(a, cfg.epsilon);
  Json values = Json::array();
  for (const S& v : inv.values) values.push_back(scalar_out(v));
  Json out{{"n", a.half_dim()},
           {"pfaffian", scalar_out(inv.values.front())},
           {"sum", scalar_out(inv.values.back())},
           {"invariants", std::move(values)}};
  emit(cfg, out.dump());
  return 0;
}

template <typename S>
int run_classify(const RunConfig& cfg, const std::string& path) {
  const SkewMatrix<S> a = load_skew<S>(path);
  emit(cfg, label_to_json(classify(a, cfg.epsilon)).dump());
  return 0;
}

int run_witness(const RunConfig& cfg, const std::string& path_a, const std::string& path_b) {
  if (cfg.rational()) {
    const auto a = load_skew<Rational>(path_a);
    const auto b = load_skew<Rational>(path_b);
    const WitnessOutcome outcome = witness_with_fallback(a, b, cfg.epsilon);
    if (outcome.is_degraded())
      emit(cfg, certificate_to_json(*outcome.degraded).dump());
    else
      emit(cfg, certificate_to_json(*outcome.exact).dump());
  } else {
    const auto a = load_skew<double>(path_a);
    const auto b = load_skew<double>(path_b);
    emit(cfg, certificate_to_json(witness(a, b, cfg.epsilon)).dump());
  }
  return 0;
}

template <typename S>
int run_verify(const RunConfig& cfg, const std::string& path) {
  const Mat<S> p = load_dense<S>(path);
  Json out{{"n", p.rows() / 2}, {"symplectic", is_symplectic(p, cfg.epsilon)}};
  emit(cfg, out.dump());
  return 0;
}

template <typename S>
int run_act(const RunConfig& cfg, const std::string& path_p, const std::string& path_a) {
  const SymplecticMatrix<S> p(load_dense<S>(path_p), cfg.epsilon);
  const SkewMatrix<S> a = load_skew<S>(path_a);
  emit(cfg, skew_to_json(act(p, a)).dump());
  return 0;
}

int run_geometry_sample(const RunConfig& cfg, double p, double q, int count, const std::string& sheet_name) {
  const OrbitGeometry geo = OrbitGeometry::from(p, q, cfg.epsilon);
  if (geo.shape == OrbitShape::kBoundary)
    throw Error(Errc::kDomain, "delta = 0: no parametrizing map for the boundary case");
  const Sheet sheet = sheet_name == "lower" ? Sheet::kLower : Sheet::kUpper;

  std::mt19937_64 rng(cfg.seed);
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };  // [0, 1)
  auto in_range = [&](double lo, double hi) { return lo + (hi - lo) * unit(); };

  std::string csv = "a,b,c,d,e,f";
  for (int i = 0; i < count; ++i) {
    std::array<double, 4> bcde{};
    if (geo.shape == OrbitShape::kSphereTimesPlane) {
      double x, y;
      do {
        x = in_range(-1, 1);
        y = in_range(-1, 1);
      } while (x * x + y * y > 1.0);
      bcde = orbit_map_positive_delta(x, y, in_range(-3, 3), in_range(-3, 3), geo.delta, cfg.epsilon);
    } else {
      double z, w;
      do {
        z = in_range(-1, 1);
        w = in_range(-1, 1);
      } while (z * z + w * w > 1.0 || z * z + w * w < 1e-6);
      bcde = orbit_map_negative_delta(in_range(-3, 3), in_range(-3, 3), z, w, geo.delta, cfg.epsilon);
    }
    const SkewMatrix<double> m = lift_to_orbit(bcde, p, q, sheet, cfg.epsilon);
    csv += "\n";
    const char* sep = "";
    for (const double v : m.upper()) {
      csv += sep;
      csv += double_to_string(v);
      sep = ",";
    }
  }
  emit(cfg, csv);
  return 0;
}

Json invariants_json(const GlobalInvariants& g) {
  return Json{{"inf_m", g.inf_m},
              {"sup_m", g.sup_m},
              {"inf_M", g.inf_M},
              {"sup_M", g.sup_M},
              {"nowhere_vanishing", g.nowhere_vanishing_witnessed},
              {"attained_at",
               Json{{"inf_m", g.at_inf_m}, {"sup_m", g.at_sup_m}, {"inf_M", g.at_inf_M}, {"sup_M", g.at_sup_M}}}};
}

int run_forms_invariants(const RunConfig& cfg, const std::string& form_path, double lo, double hi, int res,
                         std::optional<double> t) {
  const SplitForm form = SplitForm::parse(read_file(form_path));
  const SampleDomain domain = SampleDomain::uniform(form.pairs(), lo, hi, res, t);
  const GlobalInvariants g = global_invariants(form, domain, cfg.epsilon);
  Json out = invariants_json(g);
  out["pairs"] = form.pairs();
  out["box"] = Json::array({lo, hi});
  out["resolution"] = res;
  if (t) out["t"] = *t;
  out["note"] = "grid-approximate inf/sup over the sampled box";
  emit(cfg, out.dump());
  return 0;
}

int run_forms_compare(const RunConfig& cfg, const std::string& path1, const std::string& path2, double lo, double hi,
                      int res, std::optional<double> t1, std::optional<double> t2) {
  const SplitForm form1 = SplitForm::parse(read_file(path1));
  const SplitForm form2 = SplitForm::parse(read_file(path2));
  if (form1.pairs() != form2.pairs())
    throw Error(Errc::kDimension, "forms have different numbers of coordinate pairs");
  const SampleDomain domain = SampleDomain::uniform(form1.pairs(), lo, hi, res, std::nullopt);
  const GapReport report = multiset_match(form1, t1, form2, t2, domain, cfg.epsilon);

  Json gaps = Json::array();
  for (const auto& gap : report.gaps)
    gaps.push_back(Json{{"invariant", gap.invariant}, {"first", gap.lhs}, {"second", gap.rhs}, {"gap", gap.size()}});
  Json out{{"first", invariants_json(report.first)},
           {"second", invariants_json(report.second)},
           {"gaps", std::move(gaps)},
           {"gap_found", report.gap_found()}};
  if (report.gap_found()) out["conclusion"] = "not equivalent: a global invariant differs";
  else out["conclusion"] = "inconclusive: sampled invariants agree";
  emit(cfg, out.dump());
  return report.gap_found() ? 6 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"invariants and orbit classification of linear symplectic forms"};
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--mode", cfg.mode, "scalar mode: rational (exact) or float")
      ->check(CLI::IsMember({"rational", "float"}))
      ->capture_default_str();
  app.add_option("--epsilon", cfg.epsilon, "zero tolerance for float mode")->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for sampling subcommands")->capture_default_str();
  app.add_option("--out", cfg.out, "write output to a file instead of stdout");

  std::function<int()> action;

  // pfaffian / invariants / classify
  std::string matrix_path;
  auto* cmd_pf = app.add_subcommand("pfaffian", "print Pf(A) of a skew matrix");
  cmd_pf->add_option("matrix", matrix_path, "matrix JSON file")->required();
  cmd_pf->callback([&] {
    action = [&] { return cfg.rational() ? run_pfaffian<Rational>(cfg, matrix_path) : run_pfaffian<double>(cfg, matrix_path); };
  });

  auto* cmd_inv = app.add_subcommand("invariants", "print Pf, s, and the full invariant vector");
  cmd_inv->add_option("matrix", matrix_path, "matrix JSON file")->required();
  cmd_inv->callback([&] {
    action = [&] { return cfg.rational() ? run_invariants<Rational>(cfg, matrix_path) : run_invariants<double>(cfg, matrix_path); };
  });

  auto* cmd_cls = app.add_subcommand("classify", "orbit label of a 4x4 form");
  cmd_cls->add_option("matrix", matrix_path, "matrix JSON file")->required();
  cmd_cls->callback([&] {
    action = [&] { return cfg.rational() ? run_classify<Rational>(cfg, matrix_path) : run_classify<double>(cfg, matrix_path); };
  });

  // witness
  std::string witness_a, witness_b;
  auto* cmd_wit = app.add_subcommand("witness", "explicit symplectomorphism between equivalent forms");
  cmd_wit->add_option("source", witness_a, "matrix JSON file (A)")->required();
  cmd_wit->add_option("target", witness_b, "matrix JSON file (B)")->required();
  cmd_wit->callback([&] {
    action = [&] { return run_witness(cfg, witness_a, witness_b); };
  });

  // verify / act
  std::string dense_path;
  auto* cmd_ver = app.add_subcommand("verify", "check P^T J P = J for a dense matrix");
  cmd_ver->add_option("matrix", dense_path, "dense matrix JSON file")->required();
  cmd_ver->callback([&] {
    action = [&] { return cfg.rational() ? run_verify<Rational>(cfg, dense_path) : run_verify<double>(cfg, dense_path); };
  });

  std::string act_p, act_a;
  auto* cmd_act = app.add_subcommand("act", "apply rho(P, A) = P^T A P");
  cmd_act->add_option("p", act_p, "dense symplectic matrix JSON file")->required();
  cmd_act->add_option("matrix", act_a, "skew matrix JSON file")->required();
  cmd_act->callback([&] {
    action = [&] { return cfg.rational() ? run_act<Rational>(cfg, act_p, act_a) : run_act<double>(cfg, act_p, act_a); };
  });

  // geometry sample
  auto* cmd_geo = app.add_subcommand("geometry", "orbit geometry utilities");
  cmd_geo->require_subcommand(1);
  double geo_p = 0, geo_q = 0;
  int geo_count = 1000;
  std::string geo_sheet = "upper";
  auto* cmd_geo_sample = cmd_geo->add_subcommand("sample", "emit a CSV point cloud of an orbit");
  cmd_geo_sample->add_option("--p", geo_p, "Pfaffian value")->required();
  cmd_geo_sample->add_option("--q", geo_q, "sum function value")->required();
  cmd_geo_sample->add_option("--count", geo_count, "number of samples")->capture_default_str();
  cmd_geo_sample->add_option("--sheet", geo_sheet, "lift sheet: upper (a >= f) or lower")
      ->check(CLI::IsMember({"upper", "lower"}))
      ->capture_default_str();
  cmd_geo_sample->callback([&] {
    action = [&] { return run_geometry_sample(cfg, geo_p, geo_q, geo_count, geo_sheet); };
  });

  // forms
  auto* cmd_forms = app.add_subcommand("forms", "split nonlinear forms");
  cmd_forms->require_subcommand(1);
  std::string form1_path, form2_path, box_spec = "-10,10";
  int res = 11;
  double t_value = 0, t1_value = 0, t2_value = 0;
  bool t_set = false, t1_set = false, t2_set = false;

  auto parse_box = [&](double& lo, double& hi) {
    auto comma = box_spec.find(',');
    if (comma == std::string::npos) throw Error(Errc::kParse, "--box expects 'lo,hi'");
    try {
      lo = std::stod(box_spec.substr(0, comma));
      hi = std::stod(box_spec.substr(comma + 1));
    } catch (const std::exception&) {
      throw Error(Errc::kParse, "--box expects 'lo,hi'");
    }
  };

  auto* cmd_fi = cmd_forms->add_subcommand("invariants", "grid approximation of the four global invariants");
  cmd_fi->add_option("--form", form1_path, "form definition file")->required();
  cmd_fi->add_option("--box", box_spec, "sample box lo,hi applied to every axis")->capture_default_str();
  cmd_fi->add_option("--res", res, "grid points per axis")->capture_default_str();
  cmd_fi->add_option("--t", t_value, "parameter value")->each([&](const std::string&) { t_set = true; });
  cmd_fi->callback([&] {
    action = [&] {
      double lo, hi;
      parse_box(lo, hi);
      return run_forms_invariants(cfg, form1_path, lo, hi, res,
                                  t_set ? std::optional<double>(t_value) : std::nullopt);
    };
  });

  auto* cmd_fc = cmd_forms->add_subcommand("compare", "invariant-gap test for two forms");
  cmd_fc->add_option("--form1", form1_path, "first form definition file")->required();
  cmd_fc->add_option("--form2", form2_path, "second form definition file")->required();
  cmd_fc->add_option("--box", box_spec, "sample box lo,hi applied to every axis")->capture_default_str();
  cmd_fc->add_option("--res", res, "grid points per axis")->capture_default_str();
  cmd_fc->add_option("--t1", t1_value, "parameter value for the first form")->each([&](const std::string&) { t1_set = true; });
  cmd_fc->add_option("--t2", t2_value, "parameter value for the second form")->each([&](const std::string&) { t2_set = true; });
  cmd_fc->callback([&] {
    action = [&] {
      double lo, hi;
      parse_box(lo, hi);
      return run_forms_compare(cfg, form1_path, form2_path, lo, hi, res,
                               t1_set ? std::optional<double>(t1_value) : std::nullopt,
                               t2_set ? std::optional<double>(t2_value) : std::nullopt);
    };
  });

  CLI11_PARSE(app, argc, argv);

  try {
    return action ? action() : 0;
  } catch (const sympf::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return exit_code_for(err.code());
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return 10;
  }
}
