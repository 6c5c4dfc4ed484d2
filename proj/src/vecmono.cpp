#include "vecmono.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace orderlab {

namespace {

Json vec_json(const VecZ& v) {
  Json a = Json::array();
  for (long long c : v) a.push_back(c);
  return a;
}

long long ceil_div(long long a, long long b) {  // b > 0
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

}  // namespace

VecMono VecMono::analyze(int dim, std::vector<VecZ> gens_in) {
  VecMono m;
  m.dim = dim;
  for (auto& g : gens_in)
    if (!vec_is_zero(g)) m.gens.push_back(g);

  {
    std::vector<char> unit_seen(dim, 0);
    bool all_units = !m.gens.empty();
    for (const auto& g : m.gens) {
      int ones = 0, at = -1;
      bool unit = true;
      for (int j = 0; j < dim; ++j) {
        if (g[j] == 1) {
          ++ones;
          at = j;
        } else if (g[j] != 0) {
          unit = false;
        }
      }
      if (unit && ones == 1)
        unit_seen[at] = 1;
      else
        all_units = false;
    }
    m.std_unit_gens = all_units && std::all_of(unit_seen.begin(), unit_seen.end(),
                                               [](char c) { return c != 0; });
  }

  // functional pool: coordinate functionals valid when every generator is
  // nonnegative in that coordinate, then a small integer grid
  for (int j = 0; j < dim; ++j) {
    bool ok = true;
    for (const auto& g : m.gens) ok = ok && g[j] >= 0;
    if (ok) {
      VecZ e(dim, 0);
      e[j] = 1;
      m.nonneg_functionals.push_back(e);
    }
  }
  {
    const int G = 4;
    VecZ phi(dim, 0);
    std::vector<VecZ> grid;
    while (true) {
      if (!vec_is_zero(phi)) {
        bool nonneg = true, pos = true;
        for (const auto& g : m.gens) {
          long long s = vec_dot(phi, g);
          nonneg = nonneg && s >= 0;
          pos = pos && s > 0;
        }
        if (nonneg) {
          long long d = 0;
          for (long long c : phi) d = std::gcd(d, c < 0 ? -c : c);
          VecZ norm(dim);
          for (int j = 0; j < dim; ++j) norm[j] = phi[j] / d;
          if (std::find(grid.begin(), grid.end(), norm) == grid.end()) {
            grid.push_back(norm);
            if (pos && !m.positive_functional) m.positive_functional = norm;
          }
        }
      }
      int j = dim - 1;
      while (j >= 0 && phi[j] == G) phi[j--] = 0;
      if (j < 0) break;
      ++phi[j];
    }
    for (auto& f : grid) {
      if (std::find(m.nonneg_functionals.begin(), m.nonneg_functionals.end(), f) ==
          m.nonneg_functionals.end())
        m.nonneg_functionals.push_back(f);
      if (m.nonneg_functionals.size() >= 32) break;
    }
  }

  // dim-1 numerical-semigroup table
  if (dim == 1 && !m.gens.empty()) {
    bool all_pos = true;
    for (const auto& g : m.gens) all_pos = all_pos && g[0] > 0;
    if (all_pos) {
      long long d = 0;
      for (const auto& g : m.gens) d = std::gcd(d, g[0]);
      long long mx = 0, mn = 0;
      for (const auto& g : m.gens) {
        mx = std::max(mx, g[0] / d);
        mn = (mn == 0) ? g[0] / d : std::min(mn, g[0] / d);
      }
      long long lim = mn * mx + mx + 2;
      if (lim <= 1'000'000) {
        m.dim1 = true;
        m.d1_gcd = d;
        m.d1_member.assign(lim, 0);
        m.d1_member[0] = 1;
        for (long long t = 1; t < lim; ++t)
          for (const auto& g : m.gens) {
            long long gg = g[0] / d;
            if (t >= gg && m.d1_member[t - gg]) {
              m.d1_member[t] = 1;
              break;
            }
          }
        // conductor: least c with [c, lim) all members and a full min-gap run
        long long c = lim;
        while (c > 0 && m.d1_member[c - 1]) --c;
        m.d1_conductor = c;
      }
    }
  }
  return m;
}

Verdict VecMono::contains(const VecZ& v, const Budget& b) const {
  const size_t k = gens.size();
  if (vec_is_zero(v)) {
    Json c;
    c["combination"] = Json::array();
    for (size_t i = 0; i < k; ++i) c["combination"].push_back(0);
    return Verdict::yes(std::move(c));
  }
  if (k == 0) return Verdict::no(Json{{"kind", "empty-generating-set"}});

  for (const auto& phi : nonneg_functionals) {
    if (vec_dot(phi, v) < 0) {
      Json c;
      c["kind"] = "functional-separation";
      c["functional"] = vec_json(phi);
      c["value"] = vec_dot(phi, v);
      return Verdict::no(std::move(c));
    }
  }

  if (dim1) {
    long long x = v[0];
    if (x % d1_gcd != 0)
      return Verdict::no(Json{{"kind", "gcd-obstruction"}, {"gcd", d1_gcd}});
    long long t = x / d1_gcd;
    auto reconstruct = [&](long long target) -> Json {
      std::vector<long long> mult(k, 0);
      long long rem = target;
      // peel the largest generator that keeps the residual a member
      while (rem > 0) {
        bool step = false;
        for (size_t i = 0; i < k; ++i) {
          long long gg = gens[i][0] / d1_gcd;
          long long nxt = rem - gg;
          if (nxt >= 0 &&
              (nxt >= d1_conductor || (nxt < (long long)d1_member.size() && d1_member[nxt]))) {
            mult[i]++;
            rem = nxt;
            step = true;
            break;
          }
        }
        if (!step) break;
      }
      Json c;
      c["combination"] = Json::array();
      for (long long mc : mult) c["combination"].push_back(mc);
      return c;
    };
    bool member = t >= d1_conductor || (t < (long long)d1_member.size() && d1_member[t]);
    if (member) return Verdict::yes(reconstruct(t));
    return Verdict::no(Json{{"kind", "numerical-semigroup-gap"}, {"value", t}, {"gcd", d1_gcd}});
  }

  // multiplicity bounds: exact when a strictly positive functional exists
  bool complete = positive_functional.has_value();
  std::vector<long long> bound(k, b.coeff_bound);
  if (complete) {
    const VecZ& phi = *positive_functional;
    long long total = vec_dot(phi, v);
    if (total < 0)
      return Verdict::no(Json{{"kind", "functional-separation"},
                              {"functional", vec_json(phi)},
                              {"value", total}});
    for (size_t i = 0; i < k; ++i) bound[i] = total / vec_dot(phi, gens[i]);
  }

  std::vector<long long> mult(k, 0);
  VecZ res = v;
  bool truncated = false;
  // depth-first over multiplicities (ascending: least witness first), with
  // functional pruning of residuals
  std::function<bool(size_t)> dfs = [&](size_t i) -> bool {
    if (i == k) return vec_is_zero(res);
    for (const auto& phi : nonneg_functionals)
      if (vec_dot(phi, res) < 0) return false;
    if (i == k - 1) {
      // last generator: residual must be an exact multiple
      const VecZ& g = gens[i];
      long long q = -1;
      for (int j = 0; j < dim; ++j) {
        if (g[j] == 0) {
          if (res[j] != 0) return false;
        } else {
          if (res[j] % g[j] != 0) return false;
          long long qq = res[j] / g[j];
          if (qq < 0) return false;
          if (q == -1)
            q = qq;
          else if (q != qq)
            return false;
        }
      }
      if (q == -1) q = 0;  // res == 0
      if (q > bound[i]) {
        truncated = true;
        return false;
      }
      mult[i] = q;
      return true;
    }
    for (long long c = 0; c <= bound[i]; ++c) {
      mult[i] = c;
      if (dfs(i + 1)) return true;
      res = vec_sub(res, gens[i]);
    }
    for (long long c = 0; c <= bound[i]; ++c) res = vec_add(res, gens[i]);
    mult[i] = 0;
    if (!complete) truncated = true;
    return false;
  };
  if (dfs(0)) {
    Json c;
    c["combination"] = Json::array();
    for (long long mv : mult) c["combination"].push_back(mv);
    return Verdict::yes(std::move(c));
  }
  if (complete && !truncated) {
    Json c;
    c["kind"] = "complete-search-exhausted";
    c["functional"] = vec_json(*positive_functional);
    return Verdict::no(std::move(c));
  }
  Json c;
  c["kind"] = "coeff-bound-exhausted";
  c["coeff_bound"] = b.coeff_bound;
  return Verdict::unknown(std::move(c));
}

std::vector<VecZ> VecMono::enumerate(int box, size_t cap) const {
  std::vector<VecZ> out;
  std::map<VecZ, bool> seen;
  std::function<void(size_t, VecZ)> rec = [&](size_t i, VecZ cur) {
    if (seen.size() > cap) return;
    if (i == gens.size()) {
      if (!seen.count(cur)) {
        seen[cur] = true;
        out.push_back(cur);
      }
      return;
    }
    for (int c = 0; c <= box; ++c) {
      rec(i + 1, cur);
      cur = vec_add(cur, gens[i]);
    }
  };
  rec(0, VecZ(dim, 0));
  std::sort(out.begin(), out.end(), [](const VecZ& a, const VecZ& b) {
    long long sa = 0, sb = 0;
    for (long long c : a) sa += c < 0 ? -c : c;
    for (long long c : b) sb += c < 0 ? -c : c;
    if (sa != sb) return sa < sb;
    return a < b;
  });
  return out;
}

}  // namespace orderlab
