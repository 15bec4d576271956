#include "monodromy/lierank.hpp"

#include <algorithm>
#include <map>

namespace monodromy {

void validate_descriptor(const LieFactorDescriptor& d) {
  if (!valid_simple_type(d.type)) throw error("lierank: invalid simple type " + d.type.name());
  if (!is_prime_u64(d.ell) || d.ell < 5) throw error("lierank: ell must be a prime >= 5");
  if (d.f == 0) throw error("lierank: f must be positive");
  switch (d.twist) {
    case 1:
      break;
    case 2: {
      bool ok = (d.type.family == 'A' && d.type.rank >= 2) || (d.type.family == 'D' && d.type.rank >= 4) ||
                (d.type.family == 'E' && d.type.rank == 6);
      if (!ok) throw error("lierank: twist 2 not defined for " + d.type.name());
      break;
    }
    case 3:
      if (!(d.type.family == 'D' && d.type.rank == 4)) throw error("lierank: twist 3 only defined for D_4");
      break;
    default:
      throw error("lierank: twist must be 1, 2 or 3");
  }
}

namespace {

u64 checked_pow(u64 b, u64 e) {
  u128 r = 1;
  for (u64 i = 0; i < e; ++i) {
    r *= b;
    if (r > u128(UINT64_MAX)) throw error("lierank: order overflow");
  }
  return u64(r);
}

}  // namespace

std::vector<std::string> composition_factors(const LieFactorDescriptor& d) {
  validate_descriptor(d);
  u64 q = checked_pow(d.ell, d.f);
  std::string name;
  if (d.twist == 1) {
    if (d.type.family == 'A' && d.type.rank == 1)
      name = "PSL_2(" + std::to_string(q) + ")";
    else
      name = d.type.name() + "(" + std::to_string(q) + ")";
  } else {
    u64 qt = checked_pow(q, d.twist);
    name = std::to_string(d.twist) + d.type.name() + "(" + std::to_string(qt) + ")";
  }
  return {name, "cyclic"};
}

u64 g_type_rank(const std::vector<LieFactorDescriptor>& factors, const SimpleType& g) {
  u64 total = 0;
  for (auto& d : factors) {
    validate_descriptor(d);
    if (d.type == g) total += d.f * d.type.rank;
  }
  return total;
}

RankReport total_rank(const std::vector<LieFactorDescriptor>& factors) {
  RankReport report;
  std::map<std::string, u64> per;
  for (auto& d : factors) {
    validate_descriptor(d);
    per[d.type.name()] += d.f * d.type.rank;
  }
  for (auto& [name, rk] : per) {
    report.per_type.emplace_back(name, rk);
    report.total_rank += rk;
  }
  u64 a4 = 0;
  for (auto& d : factors)
    if (d.type == SimpleType{'A', 4}) a4 += d.f * 4;
  report.a4_parity = (a4 / 4) % 2;
  return report;
}

u64 rank_via_adjoint(u64 f_prime, u64 closure_rank) { return f_prime * closure_rank; }

u64 chevalley_order(const SimpleType& t, u64 q) {
  if (!valid_simple_type(t)) throw error("lierank: invalid simple type " + t.name());
  if (q < 2) throw error("lierank: q must be a prime power >= 2");
  const u64 n = t.rank;
  u128 order = 1;
  auto qe = [&](u64 e) {
    u128 r = 1;
    for (u64 i = 0; i < e; ++i) r *= q;
    return r;
  };
  switch (t.family) {
    case 'A':  // |SL_{n+1}(q)| = q^{n(n+1)/2} prod_{i=2}^{n+1} (q^i - 1)
      order = qe(n * (n + 1) / 2);
      for (u64 i = 2; i <= n + 1; ++i) order *= (qe(i) - 1);
      break;
    case 'B':
    case 'C':  // q^{n^2} prod_{i=1}^{n} (q^{2i} - 1)
      order = qe(n * n);
      for (u64 i = 1; i <= n; ++i) order *= (qe(2 * i) - 1);
      break;
    case 'D':  // q^{n(n-1)} (q^n - 1) prod_{i=1}^{n-1} (q^{2i} - 1)
      order = qe(n * (n - 1)) * (qe(n) - 1);
      for (u64 i = 1; i + 1 <= n; ++i) order *= (qe(2 * i) - 1);
      break;
    default:
      throw error("lierank: chevalley_order supports split classical types only");
  }
  if (order > u128(UINT64_MAX)) throw error("lierank: order overflow");
  return u64(order);
}

u64 envelope_points_order(const std::vector<LieFactorDescriptor>& factors) {
  u128 total = 1;
  for (auto& d : factors) {
    validate_descriptor(d);
    if (d.twist != 1) throw error("lierank: points order implemented for split factors only");
    u64 q = checked_pow(d.ell, d.f);
    total *= chevalley_order(d.type, q);
    if (total > u128(UINT64_MAX)) throw error("lierank: order overflow");
  }
  return u64(total);
}

std::vector<LieFactorDescriptor> descriptors_from_factors(const std::vector<LieFactor>& factors,
                                                          u64 ell) {
  std::vector<LieFactorDescriptor> out;
  for (auto& f : factors) {
    LieFactorDescriptor d;
    d.type = f.type;
    d.twist = f.twist;
    d.f = f.f;
    d.ell = ell;
    validate_descriptor(d);
    out.push_back(d);
  }
  return out;
}

}  // namespace monodromy
