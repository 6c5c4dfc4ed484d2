#include "elem.hpp"

namespace orderlab {

int elem_cmp(const Elem& a, const Elem& b) {
  if (a.v.index() != b.v.index()) return a.v.index() < b.v.index() ? -1 : 1;
  if (a.is_index()) {
    int x = a.index(), y = b.index();
    return x < y ? -1 : (x > y ? 1 : 0);
  }
  if (a.is_vec()) {
    const VecZ& x = a.vec();
    const VecZ& y = b.vec();
    if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
    for (size_t i = 0; i < x.size(); ++i)
      if (x[i] != y[i]) return x[i] < y[i] ? -1 : 1;
    return 0;
  }
  if (a.is_cuz()) return cuz_cmp_syntactic(a.cuz(), b.cuz());
  if (a.is_rat()) {
    const Rat &x = a.rat(), &y = b.rat();
    return x < y ? -1 : (x > y ? 1 : 0);
  }
  const auto& p = a.as_pair();
  const auto& q = b.as_pair();
  int c = elem_cmp(p.first, q.first);
  if (c != 0) return c;
  return elem_cmp(p.second, q.second);
}

}  // namespace orderlab
