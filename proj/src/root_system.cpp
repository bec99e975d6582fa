#include "sphericalis/root_system.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "sphericalis/errors.hpp"

namespace sphericalis {

namespace {

long long dot_ll(const std::vector<long long>& a, const std::vector<long long>& b) {
  long long s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

} // namespace

RootSystem::RootSystem(std::vector<std::vector<long long>> simple_roots,
                       std::vector<std::vector<long long>> simple_coroots,
                       size_t cap)
    : cap_(cap) {
  if (simple_roots.size() != simple_coroots.size() || simple_roots.empty())
    throw error("RootSystem: need matching nonempty simple data");
  rank_ = simple_roots[0].size();
  size_t m = simple_roots.size();
  for (size_t i = 0; i < m; ++i) {
    if (simple_roots[i].size() != rank_ || simple_coroots[i].size() != rank_)
      throw dimension_error("RootSystem: vector length mismatch");
    RootPair rp;
    rp.root = simple_roots[i];
    rp.coroot = simple_coroots[i];
    rp.expansion.assign(m, 0);
    rp.expansion[i] = 1;
    simple_.push_back(rp);
  }
  // Cartan checks: diagonal 2, off-diagonal <= 0, zero symmetry.
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) {
      long long a = dot_ll(simple_[i].coroot, simple_[j].root);
      if (i == j && a != 2)
        throw error("RootSystem: <coroot_i, root_i> != 2");
      if (i != j) {
        if (a > 0) throw error("RootSystem: positive off-diagonal pairing");
        long long b = dot_ll(simple_[j].coroot, simple_[i].root);
        if ((a == 0) != (b == 0))
          throw error("RootSystem: Cartan zero-symmetry violated");
      }
    }
  // Reflection matrices on coweight keys: v -> v - dot(v, root_i) coroot_i.
  for (size_t i = 0; i < m; ++i) {
    IntMat r = IntMat::identity(rank_);
    for (size_t a = 0; a < rank_; ++a)
      for (size_t b = 0; b < rank_; ++b)
        r.a[a * rank_ + b] -= simple_[i].coroot[a] * simple_[i].root[b];
    refl_.push_back(r);
  }
  enumerate_roots();
}

RootSystem RootSystem::from_cartan(
    const std::vector<std::vector<long long>>& cartan, size_t cap) {
  size_t n = cartan.size();
  std::vector<std::vector<long long>> roots(n, std::vector<long long>(n, 0));
  std::vector<std::vector<long long>> coroots(n, std::vector<long long>(n, 0));
  for (size_t j = 0; j < n; ++j) {
    if (cartan[j].size() != n) throw dimension_error("from_cartan: not square");
    coroots[j][j] = 1;
    for (size_t i = 0; i < n; ++i) roots[j][i] = cartan[i][j];
  }
  return RootSystem(std::move(roots), std::move(coroots), cap);
}

void RootSystem::enumerate_roots() {
  size_t m = simple_.size();
  std::set<std::vector<long long>> seen; // by expansion vector
  std::deque<RootPair> queue;
  std::vector<RootPair> all;
  for (auto& s : simple_) {
    seen.insert(s.expansion);
    queue.push_back(s);
    all.push_back(s);
  }
  while (!queue.empty()) {
    RootPair r = queue.front();
    queue.pop_front();
    for (size_t i = 0; i < m; ++i) {
      RootPair nr;
      long long pr = dot_ll(simple_[i].coroot, r.root);
      long long pc = dot_ll(r.coroot, simple_[i].root);
      nr.root.resize(rank_);
      nr.coroot.resize(rank_);
      for (size_t a = 0; a < rank_; ++a) {
        nr.root[a] = r.root[a] - pr * simple_[i].root[a];
        nr.coroot[a] = r.coroot[a] - pc * simple_[i].coroot[a];
      }
      nr.expansion.resize(m);
      for (size_t a = 0; a < m; ++a)
        nr.expansion[a] = r.expansion[a] - (a == i ? pr : 0);
      if (seen.insert(nr.expansion).second) {
        if (seen.size() > cap_)
          throw error("RootSystem: root closure exceeds cap (non-finite type?)");
        queue.push_back(nr);
        all.push_back(nr);
      }
    }
  }
  for (auto& r : all)
    if (r.positive()) positive_.push_back(r);
  // rho-check (doubled) = sum over positive coroots of the true coordinates
  rho2_.assign(rank_, 0);
  for (auto& r : positive_)
    for (size_t a = 0; a < rank_; ++a) rho2_[a] += r.coroot[a];
}

long long RootSystem::pair2(const Key& coweight_key, size_t j) const {
  return key_dot(coweight_key, simple_[j].root);
}

std::vector<long long> RootSystem::coroot_heights() const {
  // <coroot, rho> = (1/2) sum_{beta > 0} <coroot, beta>.
  std::vector<long long> h;
  for (auto& r : positive_) {
    long long tw = 0;
    for (auto& b : positive_) tw += dot_ll(r.coroot, b.root);
    if (tw % 2 != 0) throw error("coroot_heights: odd pairing");
    h.push_back(tw / 2);
  }
  return h;
}

void RootSystem::generate_weyl() const {
  if (!weyl_.empty()) return;
  size_t m = simple_.size();
  WeylElement id;
  id.matrix = IntMat::identity(rank_);
  id.inverse = id.matrix;
  id.sign = +1;
  weyl_.push_back(id);
  weyl_by_matrix_.emplace(id.matrix, 0);
  // BFS in length; expanding parents in queue order with generators in index
  // order makes each first-seen word the lexicographically least shortest.
  size_t head = 0;
  while (head < weyl_.size()) {
    WeylElement cur = weyl_[head];
    for (size_t i = 0; i < m; ++i) {
      // right multiplication: w * s_i; matrix acts on keys as cur after s_i?
      // Convention: matrix(w) = refl_{i1} ... refl_{ik} for word (i1..ik),
      // so matrix(w * s_i) = matrix(w) * refl_i.
      IntMat nm = cur.matrix * refl_[i];
      if (weyl_by_matrix_.count(nm)) continue;
      if (weyl_.size() >= 1000000)
        throw error("RootSystem: Weyl group exceeds cap");
      WeylElement ne;
      ne.matrix = nm;
      ne.inverse = refl_[i] * cur.inverse;
      ne.word = cur.word;
      ne.word.push_back((int)i);
      ne.sign = -cur.sign;
      weyl_by_matrix_.emplace(nm, weyl_.size());
      weyl_.push_back(ne);
    }
    ++head;
  }
}

const std::vector<WeylElement>& RootSystem::weyl_group() const {
  generate_weyl();
  return weyl_;
}

const WeylElement& RootSystem::weyl_identity() const {
  generate_weyl();
  return weyl_[0];
}

size_t RootSystem::weyl_index(const IntMat& mt) const {
  generate_weyl();
  auto it = weyl_by_matrix_.find(mt);
  if (it == weyl_by_matrix_.end()) throw error("weyl_index: unknown element");
  return it->second;
}

const WeylElement& RootSystem::weyl_product(const WeylElement& a,
                                            const WeylElement& b) const {
  generate_weyl();
  return weyl_[weyl_index(a.matrix * b.matrix)];
}

const WeylElement& RootSystem::weyl_from_word(const std::vector<int>& word) const {
  generate_weyl();
  IntMat m = IntMat::identity(rank_);
  for (int i : word) {
    if (i < 0 || (size_t)i >= simple_.size())
      throw error("weyl_from_word: index out of range");
    m = m * refl_[i];
  }
  return weyl_[weyl_index(m)];
}

TorusLaurent RootSystem::schur_numerator(const Key& lambda2) const {
  generate_weyl();
  TorusLaurent num(rank_);
  for (auto& w : weyl_) {
    Key e = key_add(rho2_, key_neg(w.matrix.apply(rho2_)));
    e = key_add(e, w.matrix.apply(lambda2));
    num.add_term(e, TPoly(QRat(w.sign)));
  }
  return num;
}

TorusLaurent RootSystem::schur_lowest(const Key& lambda2) const {
  TorusLaurent num = schur_numerator(lambda2);
  if (num.is_zero()) return TorusLaurent::zero(rank_);
  TorusLaurent den = TorusLaurent::one(rank_);
  for (auto& r : positive_)
    den = den * TorusLaurent::one_minus(r.coroot_key(), TPoly(QRat(1)));
  return exact_divide(num, den);
}

} // namespace sphericalis
