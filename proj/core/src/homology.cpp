#include "ydsim/homology.hpp"
#include "ydsim/rng.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "ydsim/candidates.hpp"

namespace ydsim {

bool is_prime_u32(uint32_t q) {
  if (q < 2) return false;
  if (q % 2 == 0) return q == 2;
  for (uint64_t p = 3; p * p <= q; p += 2)
    if (q % p == 0) return false;
  return true;
}

FieldChoice FieldChoice::prime(uint32_t q) {
  if (!is_prime_u32(q))
    throw std::invalid_argument("FieldChoice: modulus is not prime");
  return {FieldKind::prime_field, q};
}

RankResult rank_boundary(const SparseBoundary& m, FieldChoice field) {
  uint64_t rank;
  if (field.kind == FieldKind::rationals) {
    rank = rank_exact(m);
  } else {
    if (!is_prime_u32(field.modulus))
      throw std::invalid_argument("rank_boundary: modulus is not prime");
    rank = rank_mod_p(m, field.modulus);
  }
  return {rank, m.cols - rank, m.rows - rank};
}

uint64_t betti_d(const Complex& y, FieldChoice field) {
  if (y.f_d() == 0) return 0;
  SparseBoundary m = boundary_matrix(y);
  return rank_boundary(m, field).kernel_dim;
}

namespace {

// core complex plus the ranks of its retained (d-1)-faces
struct CoreMatrix {
  Complex core;
  std::vector<uint64_t> retained;
  SparseBoundary m;
};

CoreMatrix core_boundary(const Complex& y) {
  CoreResult cr = collapse_to_core(y);
  CoreMatrix out{std::move(cr.core), {}, {}};
  if (out.core.f_d() == 0) return out;
  IncidenceIndex idx(out.core);
  out.retained.reserve(idx.sub_count());
  for (uint32_t s = 0; s < idx.sub_count(); ++s)
    if (idx.degree(s) >= 1) out.retained.push_back(idx.sub_rank(s));
  std::sort(out.retained.begin(), out.retained.end());
  out.m = boundary_matrix_retained(out.core, out.retained);
  return out;
}

}  // namespace

uint64_t betti_via_core(const Complex& y, FieldChoice field) {
  CoreMatrix cm = core_boundary(y);
  if (cm.core.f_d() == 0) return 0;
  return rank_boundary(cm.m, field).kernel_dim;
}

std::vector<std::vector<uint32_t>> find_boundary_simplices(const Complex& y) {
  std::vector<std::vector<uint32_t>> found;
  if (y.f_d() == 0) return found;
  const uint32_t dp1 = y.d() + 1;
  IncidenceIndex idx(y);
  std::vector<uint32_t> verts(dp1), other(dp1), probe(dp1);
  std::vector<uint64_t> subs(dp1);
  for (uint64_t f = 0; f < y.f_d(); ++f) {
    face_unrank_into(y.faces()[f], y.n(), dp1, verts);
    boundary_sub_ranks(verts, subs);
    // canonical face of a boundary simplex on W: the one missing max(W).
    // Candidate extra vertices come from the faces sharing verts minus v0.
    int64_t s0 = idx.find_sub(subs[0]);  // drop smallest vertex
    if (s0 < 0) continue;
    auto [fb, fe] = idx.sub_faces(static_cast<uint32_t>(s0));
    for (auto fi = fb; fi != fe; ++fi) {
      if (*fi == f) continue;
      face_unrank_into(y.faces()[*fi], y.n(), dp1, other);
      // extra vertex = the one not in verts
      uint32_t u = UINT32_MAX;
      for (uint32_t i = 0; i < dp1; ++i) {
        bool in = std::binary_search(verts.begin(), verts.end(), other[i]);
        if (!in) u = other[i];
      }
      if (u == UINT32_MAX || u <= verts.back()) continue;
      // verify all remaining faces (verts minus v_i) + u, i = 1..d
      bool all = true;
      for (uint32_t i = 1; i < dp1 && all; ++i) {
        uint32_t k = 0;
        for (uint32_t j = 0; j < dp1; ++j)
          if (j != i) probe[k++] = verts[j];
        probe[dp1 - 1] = u;  // u > every vertex of verts
        all = y.contains(face_rank(probe, y.n()));
      }
      if (!all) continue;
      std::vector<uint32_t> w(verts.begin(), verts.end());
      w.push_back(u);
      found.push_back(std::move(w));
    }
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

CertifiedBetti betti_rational_certified(const Complex& y, uint32_t prime) {
  if (!is_prime_u32(prime))
    throw std::invalid_argument("betti_rational_certified: bad prime");
  CertifiedBetti out;
  CoreMatrix cm = core_boundary(y);
  if (cm.core.f_d() == 0) {
    out.certified = true;  // collapsible: kernel is trivially empty
    return out;
  }
  const uint64_t f1c = cm.m.rows, f2c = cm.m.cols;
  uint64_t rank_p = rank_mod_p(cm.m, prime);
  out.betti_mod_p = f2c - rank_p;

  // lower bound 1: rows of bd_{d-1} restricted to the retained columns span
  // part of the left kernel; their mod-p rank lower-bounds its Q-dimension
  SparseRows rows;
  const uint32_t d = cm.core.d();
  {
    // build the restricted bd_{d-1}: columns = retained (d-1)-faces,
    // rows = (d-2)-faces indexed on the fly
    std::vector<uint32_t> verts(d);
    std::vector<uint64_t> subs(d);
    std::unordered_map<uint64_t, uint32_t> row_of;
    for (uint64_t c = 0; c < cm.retained.size(); ++c) {
      face_unrank_into(cm.retained[c], cm.core.n(), d, verts);
      boundary_sub_ranks(verts, subs);
      for (uint32_t i = 0; i < d; ++i) {
        auto [it, ins] =
            row_of.try_emplace(subs[i], static_cast<uint32_t>(rows.size()));
        if (ins) rows.emplace_back();
        rows[it->second].push_back(
            {static_cast<uint32_t>(c), i % 2 == 0 ? int8_t{1} : int8_t{-1}});
      }
    }
  }
  uint64_t lower_rank = eliminate_mod_p(std::move(rows),
                                        cm.retained.size(), prime, {})
                            .rank;
  out.cocycle_bound =
      f2c >= (f1c - lower_rank) ? f2c - (f1c - lower_rank) : 0;

  // lower bound 2: explicit disjoint boundary-simplex cycles in the core
  out.cycle_bound = find_boundary_simplices(cm.core).size();

  uint64_t lower = std::max(out.cocycle_bound, out.cycle_bound);
  out.betti = out.betti_mod_p;
  out.certified = lower >= out.betti_mod_p;
  return out;
}

namespace {

struct RShadowTester {
  std::vector<std::vector<uint32_t>> mod_functionals;  // per-sample, per row
  std::vector<std::vector<BigInt>> exact_basis;
  const IncidenceIndex* idx = nullptr;
  uint32_t prime = kDefaultPrime;

  bool in_shadow(std::span<const uint64_t> subs) const {
    // sign pattern (-1)^i over the candidate's boundary
    for (const auto& u : mod_functionals) {
      uint64_t pos = 0, neg = 0;
      for (size_t i = 0; i < subs.size(); ++i) {
        int64_t s = idx->find_sub(subs[i]);
        if (s < 0) return false;  // exposed row: rank must grow
        if (i % 2 == 0) pos += u[static_cast<size_t>(s)];
        else neg += u[static_cast<size_t>(s)];
      }
      if ((pos + static_cast<uint64_t>(prime) * subs.size() - neg) % prime != 0)
        return false;
    }
    for (const auto& v : exact_basis) {
      BigInt acc = 0;
      for (size_t i = 0; i < subs.size(); ++i) {
        int64_t s = idx->find_sub(subs[i]);
        if (s < 0) return false;
        if (i % 2 == 0) acc += v[static_cast<size_t>(s)];
        else acc -= v[static_cast<size_t>(s)];
      }
      if (acc != 0) return false;
    }
    return true;
  }
};

template <typename Sink>
void r_shadow_impl(const Complex& y, FieldChoice field, uint64_t seed,
                   uint32_t functionals, Sink&& sink) {
  if (field.kind == FieldKind::prime_field && !is_prime_u32(field.modulus))
    throw std::invalid_argument("r_shadow: modulus is not prime");
  IncidenceIndex idx(y);
  // retained rows: (d-1)-faces of positive degree, by local index order
  std::vector<uint64_t> retained(idx.sub_count());
  for (uint32_t s = 0; s < idx.sub_count(); ++s) retained[s] = idx.sub_rank(s);
  std::vector<uint64_t> sorted = retained;
  std::sort(sorted.begin(), sorted.end());
  SparseBoundary m = boundary_matrix_retained(y, sorted);

  // map sorted-row space back to local sub indices
  std::vector<uint32_t> sorted_to_local(sorted.size());
  for (uint32_t s = 0; s < idx.sub_count(); ++s) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), idx.sub_rank(s));
    sorted_to_local[static_cast<size_t>(it - sorted.begin())] = s;
  }

  RShadowTester tester;
  tester.idx = &idx;
  tester.prime = field.modulus;
  if (y.f_d() > 0) {
    if (field.kind == FieldKind::prime_field) {
      ModEliminationOptions opts;
      opts.keep_echelon = true;
      EchelonModP ech =
          eliminate_mod_p(boundary_rows(m, true), m.rows, field.modulus, opts);
      for (uint32_t j = 0; j < functionals; ++j) {
        auto v = sample_kernel_mod_p(ech, SplitMix64::mix(seed) + j);
        std::vector<uint32_t> per_local(v.size());
        for (size_t i = 0; i < v.size(); ++i)
          per_local[sorted_to_local[i]] = v[i];
        tester.mod_functionals.push_back(std::move(per_local));
      }
    } else {
      auto basis = kernel_basis_exact(m, true);
      for (auto& v : basis) {
        std::vector<BigInt> per_local(v.size());
        for (size_t i = 0; i < v.size(); ++i)
          per_local[sorted_to_local[i]] = std::move(v[i]);
        tester.exact_basis.push_back(std::move(per_local));
      }
    }
  }

  for_each_non_face(y, [&](uint64_t rank, std::span<const uint32_t>,
                           std::span<const uint64_t> subs) {
    if (y.f_d() == 0) return;  // empty complex has an empty shadow
    if (tester.in_shadow(subs)) sink(rank);
  });
}

}  // namespace

std::vector<uint64_t> r_shadow(const Complex& y, FieldChoice field,
                               uint64_t seed, uint32_t functionals) {
  std::vector<uint64_t> out;
  r_shadow_impl(y, field, seed, functionals,
                [&](uint64_t rank) { out.push_back(rank); });
  return out;
}

uint64_t r_shadow_size(const Complex& y, FieldChoice field, uint64_t seed,
                       uint32_t functionals) {
  uint64_t count = 0;
  r_shadow_impl(y, field, seed, functionals, [&](uint64_t) { ++count; });
  return count;
}

Regime classify_regime(const Complex& y, FieldChoice field) {
  CoreResult cr = collapse_to_core(y);
  if (cr.is_gravel) return Regime::collapsible_or_gravel;
  uint64_t beta = betti_via_core(y, field);
  uint64_t l = find_boundary_simplices(cr.core).size();
  if (beta == l) return Regime::acyclic_except_gravel;
  return Regime::cyclic;
}

}  // namespace ydsim
