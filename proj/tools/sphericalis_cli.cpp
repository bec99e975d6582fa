// sphericalis: exact computations of unramified spherical functions from
// declarative spherical data. See README.md for the subcommand grammar.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "sphericalis/engine.hpp"
#include "sphericalis/errors.hpp"
#include "sphericalis/fixtures.hpp"
#include "sphericalis/padic.hpp"
#include "sphericalis/rank_one.hpp"

using namespace sphericalis;
using nlohmann::json;

namespace {

struct CliReport {
  std::string command;
  std::string status = "ok"; // ok | fail | error
  json payload = json::object();
  std::vector<std::string> diagnostics;

  json to_json() const {
    return json{{"command", command},
                {"status", status},
                {"payload", payload},
                {"diagnostics", diagnostics}};
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw parse_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

SphericalDatum load_datum(const std::string& path) {
  return parse_datum(slurp(path));
}

// lambda in true (possibly half-integer) coordinates; doubled internally.
Key parse_lambda(const std::string& csv, size_t rank) {
  Key k;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    QRat v = QRat::parse(tok);
    QRat doubled = v * QRat(2);
    if (!doubled.is_integer())
      throw parse_error("lambda coordinate '" + tok +
                        "' is not a half-integer");
    k.push_back(doubled.num_ll());
  }
  if (k.size() != rank)
    throw parse_error("lambda has " + std::to_string(k.size()) +
                      " coordinates, datum rank is " + std::to_string(rank));
  return k;
}

std::vector<int> parse_word(const std::string& csv) {
  std::vector<int> w;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    int i = std::stoi(tok);
    if (i < 1) throw parse_error("word indices are 1-based");
    w.push_back(i - 1);
  }
  return w;
}

json laurent_json(const TorusLaurent& f) {
  json terms = json::array();
  for (auto& [k, c] : f.terms()) terms.push_back(json{{"exp", k}, {"t", c.str()}});
  return terms;
}

json rational_json(const TorusRational& f) {
  return json{{"num", laurent_json(f.num())}, {"den", laurent_json(f.den())}};
}

void emit(const CliReport& rep, bool as_json) {
  if (as_json) {
    std::cout << rep.to_json().dump(2) << "\n";
    return;
  }
  std::cout << rep.command << ": " << rep.status << "\n";
  for (auto& [k, v] : rep.payload.items()) {
    if (v.is_string())
      std::cout << "  " << k << " = " << v.get<std::string>() << "\n";
    else
      std::cout << "  " << k << " = " << v.dump() << "\n";
  }
  for (auto& d : rep.diagnostics) std::cout << "  ! " << d << "\n";
}

int finish(const CliReport& rep, bool as_json) {
  emit(rep, as_json);
  if (rep.status == "ok") return 0;
  if (rep.status == "fail") return 1;
  return 2;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"sphericalis: exact spherical-function engine"};
  app.require_subcommand(1);
  bool as_json = false;
  long long prec = 24;
  unsigned long long seed = 31337;
  app.add_flag("--json", as_json, "machine-readable output");
  app.add_option("--prec", prec, "truncation order for t-series (default 24)");
  app.add_option("--seed", seed, "seed for randomized batteries");

  std::string datum_path, lambda_csv, word_csv, path_file, case_name,
      fixture_name;
  std::string form = "both", u_str = "1/2";
  bool factored = false, tamagawa = false, run_fixture = false;
  long long lmax = 2, oracle_p = 3;
  double tol = 1e-9;

  CLI::App* c_validate = app.add_subcommand("validate", "run datum checks");
  c_validate->add_option("datum", datum_path)->required();

  CLI::App* c_omega = app.add_subcommand("omega", "eigenfunction value");
  c_omega->add_option("datum", datum_path)->required();
  c_omega->add_option("--lambda", lambda_csv, "true half-integer coords")
      ->required();
  c_omega->add_option("--form", form, "sum | schur | both");

  CLI::App* c_bw = app.add_subcommand("bw", "cocycle B_w");
  c_bw->add_option("datum", datum_path)->required();
  c_bw->add_option("--word", word_csv, "1-based reflection indices")->required();

  CLI::App* c_lvalue = app.add_subcommand("lvalue", "L_X and L_X^{1/2}");
  c_lvalue->add_option("datum", datum_path)->required();
  c_lvalue->add_flag("--factored", factored);

  CLI::App* c_volume = app.add_subcommand("volume", "measure of X(o)");
  c_volume->add_option("datum", datum_path)->required();
  c_volume->add_flag("--tamagawa", tamagawa);

  CLI::App* c_plan = app.add_subcommand("plancherel", "constant-term pairings");
  c_plan->add_option("datum", datum_path)->required();
  c_plan->add_option("--lmax", lmax, "grid radius in true coordinates");

  CLI::App* c_eis = app.add_subcommand("eisenstein", "local factors j_w");
  c_eis->add_option("datum", datum_path)->required();
  c_eis->add_option("--word", word_csv)->required();

  CLI::App* c_path = app.add_subcommand("path", "compose a rank-one path");
  c_path->add_option("pathfile", path_file)->required();

  CLI::App* c_oracle = app.add_subcommand("oracle", "p-adic integration checks");
  c_oracle->add_option("--case", case_name)->required();
  c_oracle->add_option("--p", oracle_p);
  c_oracle->add_option("--u", u_str);
  c_oracle->add_option("--tol", tol);

  CLI::App* c_ex = app.add_subcommand("examples", "list or run fixtures");
  c_ex->add_option("name", fixture_name);
  c_ex->add_flag("--run", run_fixture);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CliReport rep;
  try {
    if (*c_validate) {
      rep.command = "validate";
      SphericalDatum d = load_datum(datum_path);
      ValidationReport v = validate_datum(d);
      json checks = json::array();
      for (auto& c : v.checks)
        checks.push_back(json{{"name", c.name}, {"pass", c.pass},
                              {"detail", c.detail}});
      rep.payload = json{{"name", d.name}, {"checks", checks}};
      if (!v.all_pass()) rep.status = "fail";
    } else if (*c_omega) {
      rep.command = "omega";
      SphericalDatum d = load_datum(datum_path);
      Key la = parse_lambda(lambda_csv, d.rank);
      rep.payload["lambda2"] = la;
      if (form != "sum" && form != "schur" && form != "both")
        throw parse_error("--form must be sum, schur or both");
      TorusRational b = beta(d);
      if (form == "sum" || form == "both") {
        OmegaValue v = omega_sum(d, la);
        rep.payload["sum"] = rational_json(v.value);
      }
      if (form == "schur" || form == "both") {
        OmegaValue v = omega_schur(d, la);
        rep.payload["schur_over_beta"] = rational_json(v.value);
      }
      if (form == "both") {
        OmegaValue vs = omega_sum(d, la);
        OmegaValue vc = omega_schur(d, la);
        bool consistent = vs.value == b * vc.value;
        rep.payload["consistency"] = consistent;
        if (!consistent) rep.status = "fail";
      }
    } else if (*c_bw) {
      rep.command = "bw";
      SphericalDatum d = load_datum(datum_path);
      const WeylElement& w = d.phi_x().weyl_from_word(parse_word(word_csv));
      TorusRational v = bw(d, w);
      rep.payload["length"] = w.length();
      rep.payload["bw"] = rational_json(v);
      rep.payload["bw_str"] = v.str();
    } else if (*c_lvalue) {
      rep.command = "lvalue";
      SphericalDatum d = load_datum(datum_path);
      rep.payload["c"] = constant_c(d).str();
      rep.payload["lhalf"] = lhalf(d).str();
      rep.payload["lfull"] = lfull(d).str();
      if (factored) {
        LFactorization lf = lfactors(d);
        json facs = json::array();
        for (auto& f : lf.factors)
          facs.push_back(json{{"sigma", f.sigma}, {"r2", f.r2},
                              {"theta", f.theta}, {"exponent", f.exponent}});
        rep.payload["factors"] = facs;
        rep.payload["constant"] = lf.constant.str();
      }
    } else if (*c_volume) {
      rep.command = "volume";
      SphericalDatum d = load_datum(datum_path);
      rep.payload["volume"] = volume(d).str();
      if (tamagawa) rep.payload["tamagawa"] = tamagawa_volume(d).str();
    } else if (*c_plan) {
      rep.command = "plancherel";
      SphericalDatum d = load_datum(datum_path);
      json rows = json::array();
      // diagonal at zero plus a small antidominant sample
      PlancherelResult zz =
          plancherel_pairing(d, Key(d.rank, 0), Key(d.rank, 0), prec);
      rows.push_back(json{{"lambda2", Key(d.rank, 0)},
                          {"mu2", Key(d.rank, 0)},
                          {"exact", zz.exact_value.str()}});
      for (long long m = 1; m <= lmax; ++m) {
        Key la(d.rank, 0);
        la[0] = -2 * m;
        if (!is_x_antidominant(d, la)) continue;
        PlancherelResult r = plancherel_pairing(d, la, Key(d.rank, 0), prec);
        rows.push_back(json{{"lambda2", la}, {"mu2", Key(d.rank, 0)},
                            {"exact", r.exact_value.str()}});
      }
      rep.payload["pairings"] = rows;
    } else if (*c_eis) {
      rep.command = "eisenstein";
      SphericalDatum d = load_datum(datum_path);
      if (!d.ambient.system)
        throw parse_error("datum carries no ambient Cartan matrix");
      const WeylElement& w =
          d.ambient.system->weyl_from_word(parse_word(word_csv));
      EisensteinFactors ef = eisenstein_factors(*d.ambient.system, w);
      rep.payload["j_w"] = rational_json(ef.j_w);
      rep.payload["j_tilde_w"] = rational_json(ef.j_tilde_w);
      rep.payload["fw_tw_ratio"] = rational_json(ef.fw_tw_ratio);
    } else if (*c_path) {
      rep.command = "path";
      OrbitPath p = parse_path(slurp(path_file));
      TorusRational b = compose_path(p);
      TorusRational bb = backtick_b(p);
      rep.payload["b"] = rational_json(b);
      rep.payload["backtick_b"] = rational_json(bb);
      if (!p.restriction.empty())
        rep.payload["restricted"] = rational_json(restrict_to_x(p, bb));
      for (auto& [up, lo] : p.induction_checks) {
        auto fail = check_induction_step(p, up, lo);
        if (fail) {
          rep.status = "fail";
          rep.diagnostics.push_back("induction check (" + std::to_string(up) +
                                    "," + std::to_string(lo) + "): " + *fail);
        }
      }
    } else if (*c_oracle) {
      rep.command = "oracle";
      OracleCase tag = oracle_case_parse(case_name);
      OracleReport r = verify_case(tag, oracle_p, QRat::parse(u_str), tol);
      rep.payload = json{{"case", r.case_name}, {"p", r.p},
                         {"samples", r.samples}, {"max_rel_err", r.max_rel_err},
                         {"pass", r.pass}};
      if (!r.detail.empty()) rep.diagnostics.push_back(r.detail);
      if (!r.pass) rep.status = "fail";
    } else if (*c_ex) {
      rep.command = "examples";
      if (fixture_name.empty()) {
        rep.payload["fixtures"] = list_fixtures();
      } else if (!run_fixture) {
        rep.payload["datum"] = json::parse(get_fixture(fixture_name).datum_json);
      } else {
        RegressionReport r = regression_suite(fixture_name);
        json rows = json::array();
        for (auto& e : r.entries)
          rows.push_back(json{{"target", e.target}, {"pass", e.pass},
                              {"detail", e.detail}});
        rep.payload = json{{"fixture", r.fixture}, {"targets", rows}};
        if (!r.all_pass()) rep.status = "fail";
      }
    }
  } catch (const parse_error& e) {
    rep.status = "error";
    rep.diagnostics.push_back(e.what());
  } catch (const error& e) {
    rep.status = "error";
    rep.diagnostics.push_back(e.what());
  } catch (const std::exception& e) {
    rep.status = "error";
    rep.diagnostics.push_back(e.what());
  }
  return finish(rep, as_json);
}
