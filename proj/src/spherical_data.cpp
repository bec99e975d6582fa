#include "sphericalis/spherical_data.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "json.hpp"

#include "sphericalis/errors.hpp"

namespace sphericalis {

using nlohmann::json;

std::string root_kind_name(RootKind k) {
  switch (k) {
    case RootKind::G: return "G";
    case RootKind::TSplit: return "T-split";
    case RootKind::TNonSplit: return "T-nonsplit";
    case RootKind::UPsi: return "U-psi";
  }
  return "?";
}

RootKind root_kind_parse(const std::string& s) {
  if (s == "G") return RootKind::G;
  if (s == "T-split") return RootKind::TSplit;
  if (s == "T-nonsplit") return RootKind::TNonSplit;
  if (s == "U-psi") return RootKind::UPsi;
  throw parse_error("unknown spherical root kind '" + s + "'");
}

const RootSystem& SphericalDatum::phi_x() const {
  if (!phi_x_) {
    std::vector<std::vector<long long>> roots, coroots;
    for (auto& r : spherical_roots) {
      roots.push_back(r.gamma);
      std::vector<long long> tc(r.cogamma.size());
      for (size_t i = 0; i < tc.size(); ++i) {
        if (r.cogamma[i] % 2 != 0)
          throw error("spherical coroot not integral in true coordinates");
        tc[i] = r.cogamma[i] / 2;
      }
      coroots.push_back(tc);
    }
    phi_x_ = std::make_shared<RootSystem>(roots, coroots);
  }
  return *phi_x_;
}

std::vector<ThetaTriple> SphericalDatum::theta_full() const {
  std::vector<ThetaTriple> all = theta_plus;
  for (auto& t : theta_plus) {
    ThetaTriple n = t;
    n.theta = key_neg(t.theta);
    all.push_back(n);
  }
  return all;
}

bool SphericalDatum::operator==(const SphericalDatum& o) const {
  auto triples_sorted = [](std::vector<ThetaTriple> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (name != o.name || affine != o.affine || twisted != o.twisted ||
      rank != o.rank || rho_pX != o.rho_pX || colors != o.colors)
    return false;
  if (spherical_roots.size() != o.spherical_roots.size()) return false;
  for (size_t i = 0; i < spherical_roots.size(); ++i) {
    if (spherical_roots[i].gamma != o.spherical_roots[i].gamma ||
        spherical_roots[i].cogamma != o.spherical_roots[i].cogamma ||
        spherical_roots[i].kind != o.spherical_roots[i].kind)
      return false;
  }
  if (triples_sorted(theta_plus) != triples_sorted(o.theta_plus)) return false;
  return ambient.rho_pairings == o.ambient.rho_pairings;
}

namespace {

std::vector<long long> to_ll_vector(const json& j, const std::string& path) {
  if (!j.is_array()) throw parse_error(path + ": expected array");
  std::vector<long long> v;
  for (auto& x : j) {
    if (!x.is_number_integer()) throw parse_error(path + ": expected integers");
    v.push_back(x.get<long long>());
  }
  return v;
}

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw parse_error(path + ": unknown field '" + it.key() + "'");
}

} // namespace

SphericalDatum parse_datum(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("datum: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw parse_error("datum: expected object");
  reject_unknown(j,
                 {"name", "affine", "twisted", "rank", "lattice_scale",
                  "ambient", "spherical_roots", "theta_plus", "colors",
                  "rho_pX"},
                 "datum");
  SphericalDatum d;
  auto need = [&](const char* f) -> const json& {
    if (!j.contains(f)) throw parse_error(std::string("datum: missing '") + f + "'");
    return j.at(f);
  };
  d.name = need("name").get<std::string>();
  d.affine = need("affine").get<bool>();
  d.twisted = need("twisted").get<bool>();
  d.rank = need("rank").get<size_t>();
  if (need("lattice_scale").get<long long>() != 2)
    throw parse_error("datum.lattice_scale: must be 2");

  const json& amb = need("ambient");
  reject_unknown(amb, {"cartan", "pos_coroot_rho_pairings"}, "datum.ambient");
  if (amb.contains("cartan")) {
    std::vector<std::vector<long long>> cartan;
    for (auto& row : amb.at("cartan"))
      cartan.push_back(to_ll_vector(row, "datum.ambient.cartan"));
    d.ambient.system = std::make_shared<RootSystem>(RootSystem::from_cartan(cartan));
    d.ambient.rho_pairings = d.ambient.system->coroot_heights();
  } else if (amb.contains("pos_coroot_rho_pairings")) {
    d.ambient.rho_pairings =
        to_ll_vector(amb.at("pos_coroot_rho_pairings"),
                     "datum.ambient.pos_coroot_rho_pairings");
  } else {
    throw parse_error("datum.ambient: need cartan or pos_coroot_rho_pairings");
  }

  for (auto& rj : need("spherical_roots")) {
    reject_unknown(rj, {"gamma", "cogamma", "kind"}, "datum.spherical_roots[]");
    SphericalRoot r;
    r.gamma = to_ll_vector(rj.at("gamma"), "spherical_roots[].gamma");
    r.cogamma = to_ll_vector(rj.at("cogamma"), "spherical_roots[].cogamma");
    r.kind = root_kind_parse(rj.at("kind").get<std::string>());
    if (r.gamma.size() != d.rank || r.cogamma.size() != d.rank)
      throw parse_error("spherical_roots[]: vector length != rank");
    if (key_dot(r.cogamma, r.gamma) != 4)
      throw parse_error("spherical_roots[]: <cogamma,gamma> != 2");
    d.spherical_roots.push_back(r);
  }
  for (auto& tj : need("theta_plus")) {
    reject_unknown(tj, {"coweight", "sign", "r2"}, "datum.theta_plus[]");
    ThetaTriple t;
    t.theta = to_ll_vector(tj.at("coweight"), "theta_plus[].coweight");
    t.sigma = tj.at("sign").get<int>();
    t.r2 = tj.at("r2").get<long long>();
    if (t.theta.size() != d.rank)
      throw parse_error("theta_plus[]: coweight length != rank");
    if (t.sigma != 1 && t.sigma != -1)
      throw parse_error("theta_plus[]: sign must be 1 or -1");
    if (t.r2 < 1) throw parse_error("theta_plus[]: r2 must be >= 1");
    d.theta_plus.push_back(t);
  }
  for (auto& cj : need("colors")) {
    Key c = to_ll_vector(cj, "datum.colors[]");
    if (c.size() != d.rank) throw parse_error("colors[]: length != rank");
    d.colors.push_back(c);
  }
  d.rho_pX = to_ll_vector(need("rho_pX"), "datum.rho_pX");
  if (d.rho_pX.size() != d.rank)
    throw parse_error("datum.rho_pX: length != rank");
  return d;
}

std::string datum_to_json(const SphericalDatum& d) {
  json j;
  j["name"] = d.name;
  j["affine"] = d.affine;
  j["twisted"] = d.twisted;
  j["rank"] = d.rank;
  j["lattice_scale"] = 2;
  if (d.ambient.system) {
    json cart = json::array();
    size_t n = d.ambient.system->num_simple();
    for (size_t i = 0; i < n; ++i) {
      json row = json::array();
      for (size_t k = 0; k < n; ++k) {
        long long p = 0;
        for (size_t a = 0; a < d.ambient.system->rank(); ++a)
          p += d.ambient.system->simple(i).coroot[a] *
               d.ambient.system->simple(k).root[a];
        row.push_back(p);
      }
      cart.push_back(row);
    }
    j["ambient"] = json{{"cartan", cart}};
  } else {
    j["ambient"] = json{{"pos_coroot_rho_pairings", d.ambient.rho_pairings}};
  }
  j["spherical_roots"] = json::array();
  for (auto& r : d.spherical_roots)
    j["spherical_roots"].push_back(json{{"gamma", r.gamma},
                                        {"cogamma", r.cogamma},
                                        {"kind", root_kind_name(r.kind)}});
  j["theta_plus"] = json::array();
  for (auto& t : d.theta_plus)
    j["theta_plus"].push_back(
        json{{"coweight", t.theta}, {"sign", t.sigma}, {"r2", t.r2}});
  j["colors"] = d.colors;
  j["rho_pX"] = d.rho_pX;
  return j.dump(2);
}

namespace {

enum class Side { plus, minus, neither };

Side theta_side(const SphericalDatum& d, const Key& th) {
  bool zero = true;
  for (auto x : th)
    if (x) zero = false;
  if (zero) return Side::neither;
  if (cone_member(d.colors, th)) return Side::plus;
  if (cone_member(d.colors, key_neg(th))) return Side::minus;
  return Side::neither;
}

} // namespace

std::vector<ThetaTriple> theta_flipped_by(const SphericalDatum& d,
                                          size_t gamma_index) {
  if (gamma_index >= d.spherical_roots.size())
    throw error("theta_flipped_by: index out of range");
  const IntMat& w = d.phi_x().simple_reflection(gamma_index);
  std::vector<ThetaTriple> out;
  for (auto& t : d.theta_plus) {
    if (theta_side(d, w.apply(t.theta)) == Side::minus) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ValidationReport validate_datum(const SphericalDatum& d) {
  ValidationReport rep;
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    rep.checks.push_back({name, pass, detail});
  };

  // (1) Cartan consistency of Phi_X (building the root system runs the
  // generalized-Cartan and finiteness checks).
  try {
    d.phi_x();
    add("cartan", true, "");
  } catch (const error& e) {
    add("cartan", false, e.what());
    return rep; // nothing below is meaningful
  }

  // (6) r2 positivity.
  {
    bool ok = true;
    for (auto& t : d.theta_plus)
      if (t.r2 < 1) ok = false;
    add("r2-positive", ok, ok ? "" : "triple with r2 < 1");
  }

  // (4) strict convexity of the color cone, 0 not a color.
  bool pointed = cone_pointed(d.colors);
  add("colors-pointed", pointed, pointed ? "" : "color cone not strictly convex");

  auto theta = d.theta_full();

  // (2) W_X-stability of Theta as a multiset.
  {
    bool ok = true;
    std::string why;
    std::multiset<std::pair<Key, std::pair<int, long long>>> bag;
    auto enc = [](const ThetaTriple& t) {
      return std::make_pair(t.theta, std::make_pair(t.sigma, t.r2));
    };
    for (auto& t : theta) bag.insert(enc(t));
    for (size_t g = 0; g < d.spherical_roots.size() && ok; ++g) {
      const IntMat& w = d.phi_x().simple_reflection(g);
      std::multiset<std::pair<Key, std::pair<int, long long>>> image;
      for (auto& t : theta) {
        ThetaTriple n = t;
        n.theta = w.apply(t.theta);
        image.insert(enc(n));
      }
      if (image != bag) {
        ok = false;
        why = "Theta not stable under w_" + std::to_string(g + 1);
      }
    }
    add("theta-wx-stable", ok, why);
  }

  // (3) posneg: sign dichotomy, and the flipped part of Theta+ behaves like
  // the virtual colors belonging to each root: nonempty for non-(U,psi)
  // roots, empty for (U,psi), positive pairing with gamma, containing every
  // color valuation that pairs positively, and stable under
  // theta -> -w_gamma theta.
  {
    bool ok = pointed; // side tests are meaningless on a non-pointed cone
    std::string why = pointed ? "" : "skipped: color cone not pointed";
    for (auto& t : theta) {
      if (!ok) break;
      if (theta_side(d, t.theta) == Side::neither) {
        ok = false;
        why = "triple on neither side of the color cone";
      }
    }
    if (ok) {
      for (size_t g = 0; g < d.spherical_roots.size() && ok; ++g) {
        auto flipped = theta_flipped_by(d, g);
        const auto& root = d.spherical_roots[g];
        if (root.kind == RootKind::UPsi) {
          if (!flipped.empty()) {
            ok = false;
            why = "(U,psi) root with flipped triples";
          }
          continue;
        }
        if (flipped.empty()) {
          ok = false;
          why = "no flipped triple for root " + std::to_string(g + 1);
          continue;
        }
        for (auto& t : flipped)
          if (key_dot(t.theta, root.gamma) <= 0) {
            ok = false;
            why = "flipped triple with <theta,gamma> <= 0";
          }
        // color criterion: every color valuation in Theta+ pairing
        // positively with gamma must be flipped
        for (auto& t : d.theta_plus) {
          bool is_color = false;
          for (auto& c : d.colors)
            if (c == t.theta) is_color = true;
          if (is_color && key_dot(t.theta, root.gamma) > 0) {
            bool found = false;
            for (auto& f : flipped)
              if (f == t) found = true;
            if (!found) {
              ok = false;
              why = "color valuation pairing > 0 not flipped";
            }
          }
        }
        // involution theta -> -w_gamma theta preserves the flipped multiset
        const IntMat& w = d.phi_x().simple_reflection(g);
        std::multiset<std::pair<Key, std::pair<int, long long>>> a, b;
        for (auto& t : flipped) {
          a.insert({t.theta, {t.sigma, t.r2}});
          b.insert({key_neg(w.apply(t.theta)), {t.sigma, t.r2}});
        }
        if (a != b) {
          ok = false;
          why = "flipped multiset not stable under theta -> -w theta";
        }
      }
    }
    add("posneg", ok, why);
  }

  // (5) affine: hyperplane separation of the spherical roots from Theta+.
  if (d.affine) {
    std::vector<std::vector<long long>> roots;
    for (auto& r : d.spherical_roots) roots.push_back(r.gamma);
    std::vector<Key> thetas;
    for (auto& t : d.theta_plus) thetas.push_back(t.theta);
    bool ok = separation_lp(roots, thetas).has_value();
    add("affine-separation", ok, ok ? "" : "no separating functional");
  }

  return rep;
}

} // namespace sphericalis
