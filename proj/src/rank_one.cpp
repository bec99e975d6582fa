#include "sphericalis/rank_one.hpp"

#include <algorithm>
#include <cctype>

#include "json.hpp"

#include "sphericalis/errors.hpp"

namespace sphericalis {

using nlohmann::json;

std::string fe_tag_name(FeTag t) {
  switch (t) {
    case FeTag::u_raise: return "U-raise";
    case FeTag::u_lower: return "U-lower";
    case FeTag::u_psi: return "U-psi";
    case FeTag::t_split_unram: return "T-split-unram";
    case FeTag::t_split_ram: return "T-split-ram";
    case FeTag::t_nonsplit_unram: return "T-nonsplit-unram";
    case FeTag::t_nonsplit_ram: return "T-nonsplit-ram";
    case FeTag::n_split_int_unram: return "N-split-int-unram";
    case FeTag::n_split_int_ram: return "N-split-int-ram";
    case FeTag::n_nonsplit_int_unram: return "N-nonsplit-int-unram";
    case FeTag::n_nonsplit_int_ram: return "N-nonsplit-int-ram";
    case FeTag::n_nonintegral: return "N-nonintegral";
  }
  return "?";
}

FeTag fe_tag_parse(const std::string& s) {
  static const std::vector<FeTag> all = {
      FeTag::u_raise,          FeTag::u_lower,
      FeTag::u_psi,            FeTag::t_split_unram,
      FeTag::t_split_ram,      FeTag::t_nonsplit_unram,
      FeTag::t_nonsplit_ram,   FeTag::n_split_int_unram,
      FeTag::n_split_int_ram,  FeTag::n_nonsplit_int_unram,
      FeTag::n_nonsplit_int_ram, FeTag::n_nonintegral};
  std::string lo = s;
  std::transform(lo.begin(), lo.end(), lo.begin(), ::tolower);
  for (auto t : all) {
    std::string n = fe_tag_name(t);
    std::transform(n.begin(), n.end(), n.begin(), ::tolower);
    if (n == lo) return t;
  }
  throw parse_error("unknown functional-equation tag '" + s + "'");
}

namespace {

Key pad_key(const Key& k, size_t rank) {
  Key r = k;
  r.resize(rank, 0);
  return r;
}

TorusRational frac(const TorusLaurent& n, const TorusLaurent& d) {
  return TorusRational(n, d);
}

} // namespace

TorusRational fe_coefficient(const RootSystem& ambient, const FeCase& fe,
                             bool extend_u) {
  size_t base = ambient.rank();
  size_t rank = base + (extend_u ? 1 : 0);
  if (fe.alpha_index >= ambient.num_simple())
    throw error("fe_coefficient: root index out of range");
  Key alpha = pad_key(ambient.simple(fe.alpha_index).coroot_key(), rank);
  Key malpha = key_neg(alpha);
  auto mono = [rank](const Key& k, const TPoly& c) {
    return TorusLaurent::monomial(k, c);
  };
  auto one_minus = [rank](const Key& k, const TPoly& c) {
    return TorusLaurent::one_minus(k, c);
  };
  auto one = TorusLaurent::one(rank);

  switch (fe.tag) {
    case FeTag::u_lower:
      // -e^{-a} (1 - q^{-1} e^{-a}) / (1 - e^{-a})
      return frac(one_minus(malpha, TPoly::t_power(2)).mul_monomial(malpha, TPoly(QRat(-1))),
                  one_minus(malpha, TPoly(QRat(1))));
    case FeTag::u_raise:
      // -e^{-a} (1 - e^{a}) / (1 - q^{-1} e^{a})
      return frac(one_minus(alpha, TPoly(QRat(1))).mul_monomial(malpha, TPoly(QRat(-1))),
                  one_minus(alpha, TPoly::t_power(2)));
    case FeTag::u_psi:
      return TorusRational(one);
    case FeTag::t_split_unram: {
      if (fe.v_d.empty() || fe.v_dp.empty())
        throw error("fe_coefficient: T-split needs v_D and v_D'");
      Key vd = pad_key(fe.v_d, rank), vdp = pad_key(fe.v_dp, rank);
      // with e^{v_D}(shift) = q^{-s_D}:
      //   (1 - q^{-1+s_D} e^{-v_D})(1 - q^{-1+s_D'} e^{-v_D'})
      //   / (1 - q^{-s_D} e^{v_D})(1 - q^{-s_D'} e^{v_D'})
      TorusLaurent n = one_minus(key_neg(vd), TPoly::t_power(2 - fe.shift_d2)) *
                       one_minus(key_neg(vdp), TPoly::t_power(2 - fe.shift_dp2));
      TorusLaurent dd = one_minus(vd, TPoly::t_power(fe.shift_d2)) *
                        one_minus(vdp, TPoly::t_power(fe.shift_dp2));
      return frac(n, dd);
    }
    case FeTag::t_split_ram:
      return TorusRational(mono(key_scale(fe.conductor, malpha), TPoly(QRat(1))));
    case FeTag::t_nonsplit_unram:
      // (1 - q^{-1} e^{-a}) / (1 - q^{-1} e^{a})
      return frac(one_minus(malpha, TPoly::t_power(2)),
                  one_minus(alpha, TPoly::t_power(2)));
    case FeTag::t_nonsplit_ram:
      return TorusRational(mono(malpha, TPoly(QRat(1))));
    case FeTag::n_split_int_unram: {
      // ((1 - q^{-1/2} e^{-a/2}) / (1 - q^{-1/2} e^{a/2}))^2
      Key half = alpha, mhalf = malpha;
      for (auto& x : half) x /= 2;
      for (auto& x : mhalf) x /= 2;
      TorusLaurent n = one_minus(mhalf, TPoly::t_power(1));
      TorusLaurent dd = one_minus(half, TPoly::t_power(1));
      return frac(n * n, dd * dd);
    }
    case FeTag::n_split_int_ram:
    case FeTag::n_nonsplit_int_ram:
      return TorusRational(
          mono(key_scale(fe.conductor, malpha), TPoly(fe.disc_ratio)));
    case FeTag::n_nonsplit_int_unram:
      return frac(one_minus(malpha, TPoly::t_power(2)),
                  one_minus(alpha, TPoly::t_power(2)));
    case FeTag::n_nonintegral: {
      if (!extend_u)
        throw error("fe_coefficient: N-nonintegral needs the u-axis");
      Key u(rank, 0), mu(rank, 0);
      u[rank - 1] = 2; // doubled key of the symbol u
      mu[rank - 1] = -2;
      // disc_ratio * (1 - q^{-1/2} u) / (1 - q^{-1/2} u^{-1})
      TorusLaurent n = one_minus(u, TPoly::t_power(1)).scale(TPoly(fe.disc_ratio));
      TorusLaurent dd = one_minus(mu, TPoly::t_power(1));
      return frac(n, dd);
    }
  }
  throw error("fe_coefficient: bad tag");
}

TorusLaurent identify_u_square(const TorusLaurent& f, const Key& half2,
                               long long tshift) {
  size_t rank = f.rank();
  if (half2.size() != rank - 1)
    throw dimension_error("identify_u_square: base key length mismatch");
  TorusLaurent out(rank - 1);
  for (auto& [k, c] : f.terms()) {
    long long ue = k[rank - 1];
    if (ue % 4 != 0)
      throw error("identify_u_square: odd power of u remains");
    long long pairs = ue / 4; // doubled key 2 per u
    Key nk(k.begin(), k.end() - 1);
    nk = key_add(nk, key_scale(pairs, half2));
    out.add_term(nk, c * TPoly::t_power(tshift * pairs));
  }
  return out;
}

OrbitPath parse_path(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("path: invalid JSON: ") + e.what());
  }
  OrbitPath p;
  if (!j.contains("ambient"))
    throw parse_error("path: missing 'ambient' (Cartan matrix)");
  std::vector<std::vector<long long>> cartan;
  for (auto& row : j.at("ambient")) cartan.push_back(row.get<std::vector<long long>>());
  p.ambient = std::make_shared<RootSystem>(RootSystem::from_cartan(cartan));
  if (!j.contains("steps")) throw parse_error("path: missing 'steps'");
  for (auto& sj : j.at("steps")) {
    OrbitStep s;
    s.root_index = sj.at("root_index").get<size_t>();
    s.fe.alpha_index = s.root_index;
    s.fe.tag = fe_tag_parse(sj.at("case").get<std::string>());
    if (sj.contains("params")) {
      auto& pj = sj.at("params");
      for (auto it = pj.begin(); it != pj.end(); ++it) {
        const std::string& k = it.key();
        if (k == "v_d")
          s.fe.v_d = it.value().get<Key>();
        else if (k == "v_dp")
          s.fe.v_dp = it.value().get<Key>();
        else if (k == "shift_d2")
          s.fe.shift_d2 = it.value().get<long long>();
        else if (k == "shift_dp2")
          s.fe.shift_dp2 = it.value().get<long long>();
        else if (k == "conductor")
          s.fe.conductor = it.value().get<long long>();
        else if (k == "disc_ratio")
          s.fe.disc_ratio = QRat::parse(it.value().get<std::string>());
        else
          throw parse_error("path: unknown param '" + k + "'");
      }
    }
    p.steps.push_back(s);
  }
  if (j.contains("restriction"))
    for (auto& row : j.at("restriction"))
      p.restriction.push_back(row.get<std::vector<long long>>());
  if (j.contains("shift2")) p.shift2 = j.at("shift2").get<std::vector<long long>>();
  if (j.contains("induction_checks"))
    for (auto& cj : j.at("induction_checks"))
      p.induction_checks.emplace_back(cj.at(0).get<size_t>(),
                                      cj.at(1).get<size_t>());
  return p;
}

namespace {

void check_reduced(const OrbitPath& path) {
  const RootSystem& rs = *path.ambient;
  const WeylElement& w = rs.weyl_from_word(path.word());
  if (w.length() != path.steps.size())
    throw error("compose_path: path word is not reduced");
}

} // namespace

TorusRational compose_path(const OrbitPath& path) {
  const RootSystem& rs = *path.ambient;
  check_reduced(path);
  size_t rank = rs.rank();
  // b_w(chi) = prod_k fe_k(^{v_k} chi), v_k = s_{i_{k+1}} ... s_{i_m};
  // e^{mu}(^{v} chi) = e^{v^{-1} mu}(chi).
  TorusRational acc = TorusRational::one(rank);
  IntMat vinv = IntMat::identity(rank); // (v_k)^{-1}, grown right to left
  for (size_t k = path.steps.size(); k-- > 0;) {
    TorusRational f = fe_coefficient(rs, path.steps[k].fe, false);
    acc = acc * f.apply_matrix(vinv);
    // v_{k-1} = s_{i_k} v_k, so (v_{k-1})^{-1} = (v_k)^{-1} s_{i_k}
    vinv = vinv * rs.simple_reflection(path.steps[k].root_index);
  }
  return acc;
}

TorusRational backtick_b(const OrbitPath& path) {
  const RootSystem& rs = *path.ambient;
  const WeylElement& w = rs.weyl_from_word(path.word());
  TorusRational b = compose_path(path);
  TorusLaurent pre = TorusLaurent::one(rs.rank());
  for (auto& r : rs.positive_roots()) {
    Key wk = w.matrix.apply(r.coroot_key());
    bool flipped = false;
    for (auto& rr : rs.positive_roots())
      if (rr.coroot_key() == key_neg(wk)) flipped = true;
    if (flipped)
      pre = pre.mul_monomial(r.coroot_key(), TPoly(QRat(-1)));
  }
  return TorusRational(b.num() * pre, b.den());
}

TorusRational restrict_to_x(const OrbitPath& path, const TorusRational& f) {
  if (path.restriction.empty())
    throw error("restrict_to_x: path has no restriction matrix");
  size_t xr = path.restriction.size();
  size_t ar = path.ambient->rank();
  auto map_laurent = [&](const TorusLaurent& g) {
    TorusLaurent out(xr);
    for (auto& [k, c] : g.terms()) {
      Key nk(xr, 0);
      for (size_t i = 0; i < xr; ++i) {
        if (path.restriction[i].size() != ar)
          throw dimension_error("restrict_to_x: bad matrix row");
        for (size_t j = 0; j < ar; ++j) nk[i] += path.restriction[i][j] * k[j];
      }
      long long tw = path.shift2.empty() ? 0 : key_dot(k, path.shift2);
      if (tw % 2 != 0) throw error("restrict_to_x: odd delta-shift pairing");
      out.add_term(nk, c * TPoly::t_power(tw / 2));
    }
    return out;
  };
  return TorusRational(map_laurent(f.num()), map_laurent(f.den()));
}

std::optional<std::string> check_induction_step(const OrbitPath& path,
                                                size_t upper, size_t lower) {
  const RootSystem& rs = *path.ambient;
  if (upper >= path.steps.size() || lower >= path.steps.size())
    return "step index out of range";
  size_t ai = path.steps[upper].root_index;
  size_t bi = path.steps[lower].root_index;
  Key ma = key_neg(rs.simple(ai).coroot_key());
  Key wb = rs.simple_reflection(ai).apply(key_neg(rs.simple(bi).coroot_key()));
  // restricted: key and t-shift of e^{-a} vs q^{-1} e^{-w_a b}
  auto restrict_key = [&](const Key& k) {
    Key nk(path.restriction.size(), 0);
    for (size_t i = 0; i < nk.size(); ++i)
      for (size_t j = 0; j < k.size(); ++j)
        nk[i] += path.restriction[i][j] * k[j];
    return nk;
  };
  if (path.restriction.empty()) return "no restriction matrix";
  Key ra = restrict_key(ma), rb = restrict_key(wb);
  long long ta = path.shift2.empty() ? 0 : key_dot(ma, path.shift2);
  long long tb = path.shift2.empty() ? 0 : key_dot(wb, path.shift2);
  if (ra != rb) return "restricted exponents differ";
  if (ta != tb + 4) return "t-shift mismatch (expected q^{-1})"; // 4 = two doubled t-steps
  return std::nullopt;
}

} // namespace sphericalis
