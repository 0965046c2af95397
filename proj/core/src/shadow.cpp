#include "ydsim/shadow.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "ydsim/collapse.hpp"
#include "ydsim/incidence.hpp"

namespace ydsim {

namespace {

// Collapse-derived view of Y used to classify candidates.
struct ShadowContext {
  const Complex& y;
  IncidenceIndex idx;
  std::vector<int32_t> core_deg;   // per sub: degree inside the core
  std::vector<int32_t> region_deg; // per sub: degree among non-core faces
  std::vector<uint8_t> in_core;    // per face of Y

  // debris ("region") faces and their causal components: faces linked by
  // sharing a sub of core-degree 0 (subs with core faces are never free and
  // do not propagate collapses)
  std::vector<uint64_t> region_faces;          // face indices into Y
  std::vector<int32_t> face_comp;              // per face of Y, -1 if core
  std::vector<std::vector<uint32_t>> comps;    // comp -> region face indices
  std::vector<int8_t> survivable;              // per sub, -1 unknown/n.a.

  explicit ShadowContext(const Complex& complex)
      : y(complex), idx(complex) {}
};

// peel one debris component with a set of protected subs; returns per-root
// whether the root keeps at least one live face
void peel_component(const ShadowContext& ctx,
                    const std::vector<uint32_t>& comp_faces,
                    const std::vector<uint32_t>& roots,
                    std::vector<uint8_t>& root_ok) {
  const uint32_t dp1 = ctx.idx.d() + 1;
  std::unordered_map<uint32_t, int32_t> deg;   // local sub degrees
  std::unordered_map<uint64_t, uint8_t> alive; // local face liveness
  deg.reserve(comp_faces.size() * 2);
  alive.reserve(comp_faces.size() * 2);
  for (uint32_t f : comp_faces) {
    alive[f] = 1;
    const uint32_t* subs = ctx.idx.face_subs(f);
    for (uint32_t i = 0; i < dp1; ++i) {
      uint32_t s = subs[i];
      if (ctx.core_deg[s] >= 2) continue;  // permanently safe
      ++deg[s];
    }
  }
  std::unordered_set<uint32_t> protected_subs(roots.begin(), roots.end());
  std::vector<uint32_t> queue;
  for (auto& [s, dg] : deg)
    if (dg == 1 && !protected_subs.count(s)) queue.push_back(s);
  // fixed-point peel; phase structure is irrelevant for the final state
  while (!queue.empty()) {
    uint32_t s = queue.back();
    queue.pop_back();
    auto it = deg.find(s);
    if (it == deg.end() || it->second != 1) continue;
    // find its unique live face in this component
    auto [fb, fe] = ctx.idx.sub_faces(s);
    uint64_t target = std::numeric_limits<uint64_t>::max();
    for (auto fi = fb; fi != fe; ++fi) {
      auto al = alive.find(*fi);
      if (al != alive.end() && al->second) {
        target = *fi;
        break;
      }
    }
    if (target == std::numeric_limits<uint64_t>::max()) continue;
    alive[target] = 0;
    const uint32_t* subs = ctx.idx.face_subs(target);
    for (uint32_t i = 0; i < dp1; ++i) {
      uint32_t t = subs[i];
      auto dt = deg.find(t);
      if (dt == deg.end()) continue;
      if (--dt->second == 1 && !protected_subs.count(t)) queue.push_back(t);
    }
  }
  root_ok.assign(roots.size(), 0);
  for (size_t i = 0; i < roots.size(); ++i) {
    auto [fb, fe] = ctx.idx.sub_faces(roots[i]);
    for (auto fi = fb; fi != fe; ++fi) {
      auto al = alive.find(*fi);
      if (al != alive.end() && al->second) {
        root_ok[i] = 1;
        break;
      }
    }
  }
}

ShadowContext build_context(const Complex& y) {
  ShadowContext ctx(y);
  CollapseEngine eng(ctx.idx);
  eng.run_phases(std::numeric_limits<uint64_t>::max());

  const uint32_t ns = ctx.idx.sub_count();
  const uint64_t nf = ctx.idx.face_count();
  ctx.in_core.assign(nf, 0);
  for (uint64_t f = 0; f < nf; ++f) ctx.in_core[f] = eng.face_alive(f) ? 1 : 0;
  ctx.core_deg.assign(ns, 0);
  ctx.region_deg.assign(ns, 0);
  for (uint32_t s = 0; s < ns; ++s) ctx.core_deg[s] = eng.sub_degree(s);
  for (uint32_t s = 0; s < ns; ++s)
    ctx.region_deg[s] = ctx.idx.degree(s) - ctx.core_deg[s];

  // components of the debris under shared core-degree-0 subs
  ctx.face_comp.assign(nf, -1);
  std::vector<uint32_t> parent;
  std::unordered_map<uint32_t, uint32_t> sub_first;  // C0 sub -> region face slot
  std::vector<uint32_t> region_of;                   // slot -> face index
  auto find = [&](uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  const uint32_t dp1 = y.d() + 1;
  for (uint64_t f = 0; f < nf; ++f) {
    if (ctx.in_core[f]) continue;
    uint32_t slot = (uint32_t)region_of.size();
    region_of.push_back((uint32_t)f);
    parent.push_back(slot);
    const uint32_t* subs = ctx.idx.face_subs(f);
    for (uint32_t i = 0; i < dp1; ++i) {
      uint32_t s = subs[i];
      if (ctx.core_deg[s] != 0) continue;
      auto [it, ins] = sub_first.try_emplace(s, slot);
      if (!ins) {
        uint32_t a = find(slot), b = find(it->second);
        if (a != b) parent[a] = b;
      }
    }
  }
  std::unordered_map<uint32_t, uint32_t> comp_id;
  for (uint32_t slot = 0; slot < region_of.size(); ++slot) {
    uint32_t root = find(slot);
    auto [it, ins] = comp_id.try_emplace(root, (uint32_t)ctx.comps.size());
    if (ins) ctx.comps.emplace_back();
    ctx.comps[it->second].push_back(region_of[slot]);
    ctx.face_comp[region_of[slot]] = (int32_t)it->second;
  }

  // single-root rescue outcomes are filled in lazily per queried sub
  ctx.survivable.assign(ns, -1);
  return ctx;
}

int32_t component_of(const ShadowContext& ctx, uint32_t s) {
  auto [fb, fe] = ctx.idx.sub_faces(s);
  for (auto fi = fb; fi != fe; ++fi)
    if (!ctx.in_core[*fi]) return ctx.face_comp[*fi];
  return -1;
}

bool survivable(ShadowContext& ctx, uint32_t s) {
  if (ctx.survivable[s] < 0) {
    std::vector<uint8_t> ok;
    peel_component(ctx, ctx.comps[component_of(ctx, s)], {s}, ok);
    ctx.survivable[s] = ok[0];
  }
  return ctx.survivable[s] == 1;
}

// classify one candidate (not in Y) given its d+1 sub ranks
bool candidate_in_shadow(ShadowContext& ctx,
                         std::span<const uint64_t> sub_ranks,
                         std::vector<uint32_t>& needy_scratch) {
  needy_scratch.clear();
  for (uint64_t r : sub_ranks) {
    int64_t s = ctx.idx.find_sub(r);
    if (s < 0) return false;  // boundary face exposed in Y
    if (ctx.core_deg[s] >= 2) continue;
    if (ctx.region_deg[s] <= 0) return false;
    needy_scratch.push_back((uint32_t)s);
  }
  if (needy_scratch.empty()) return true;
  if (needy_scratch.size() == 1) return survivable(ctx, needy_scratch[0]);

  int32_t comps[33];  // d+1 <= 32 enforced by boundary_sub_ranks
  bool all_distinct = true;
  for (size_t i = 0; i < needy_scratch.size(); ++i) {
    comps[i] = component_of(ctx, needy_scratch[i]);
    for (size_t j = 0; j < i; ++j)
      if (comps[j] == comps[i]) all_distinct = false;
  }
  if (all_distinct) {
    for (uint32_t s : needy_scratch)
      if (!survivable(ctx, s)) return false;
    return true;
  }
  // two or more needy roots share a debris component: protection interacts,
  // peel each component group jointly
  std::vector<uint8_t> ok;
  std::vector<uint32_t> group;
  for (size_t i = 0; i < needy_scratch.size(); ++i) {
    bool handled = false;
    for (size_t j = 0; j < i; ++j) handled |= comps[j] == comps[i];
    if (handled) continue;
    group.clear();
    for (size_t j = i; j < needy_scratch.size(); ++j)
      if (comps[j] == comps[i]) group.push_back(needy_scratch[j]);
    if (group.size() == 1) {
      if (!survivable(ctx, group[0])) return false;
    } else {
      peel_component(ctx, ctx.comps[comps[i]], group, ok);
      for (uint8_t o : ok)
        if (!o) return false;
    }
  }
  return true;
}

template <typename Visitor>
void for_each_candidate(const Complex& y, Visitor&& visit) {
  // iterate all (d+1)-subsets in colex order, skipping faces of Y
  const uint32_t dp1 = y.d() + 1;
  std::vector<uint32_t> vs(dp1);
  for (uint32_t i = 0; i < dp1; ++i) vs[i] = i;
  std::vector<uint64_t> subs(dp1);
  const uint64_t total = y.max_d_faces();
  auto in_y = y.faces().begin();
  const auto end_y = y.faces().end();
  for (uint64_t rank = 0; rank < total; ++rank) {
    while (in_y != end_y && *in_y < rank) ++in_y;
    bool present = (in_y != end_y && *in_y == rank);
    if (!present) {
      boundary_sub_ranks(vs, subs);
      visit(rank, vs, subs);
    }
    // odometer step to the colex successor
    uint32_t i = 0;
    while (i + 1 < dp1 && vs[i] + 1 == vs[i + 1]) ++i;
    ++vs[i];
    for (uint32_t j = 0; j < i; ++j) vs[j] = j;
  }
}

}  // namespace

uint64_t c_shadow_size(const Complex& y) {
  ShadowContext ctx = build_context(y);
  uint64_t count = 0;
  std::vector<uint32_t> scratch;
  for_each_candidate(y, [&](uint64_t, const std::vector<uint32_t>&,
                            const std::vector<uint64_t>& subs) {
    if (candidate_in_shadow(ctx, subs, scratch)) ++count;
  });
  return count;
}

std::vector<uint64_t> c_shadow(const Complex& y) {
  ShadowContext ctx = build_context(y);
  std::vector<uint64_t> out;
  std::vector<uint32_t> scratch;
  for_each_candidate(y, [&](uint64_t rank, const std::vector<uint32_t>&,
                            const std::vector<uint64_t>& subs) {
    if (candidate_in_shadow(ctx, subs, scratch)) out.push_back(rank);
  });
  return out;
}

std::vector<uint64_t> c_shadow_oracle(const Complex& y) {
  CoreResult base = collapse_to_core(y);
  std::vector<uint64_t> out;
  const uint64_t total = y.max_d_faces();
  for (uint64_t rank = 0; rank < total; ++rank) {
    if (y.contains(rank)) continue;
    CoreResult with = collapse_to_core(y.with_face(rank));
    if (with.core.faces() != base.core.faces()) out.push_back(rank);
  }
  return out;
}

}  // namespace ydsim
