#include "ydsim/collapse.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <unordered_map>

namespace ydsim {

CollapseEngine::CollapseEngine(const IncidenceIndex& idx)
    : idx_(idx),
      deg_(idx.sub_count()),
      alive_(idx.face_count(), 1),
      root_(idx.sub_count(), 0),
      alive_count_(idx.face_count()) {
  for (uint32_t s = 0; s < idx.sub_count(); ++s) {
    deg_[s] = idx.degree(s);
    if (deg_[s] == 1) candidates_.push_back(s);
  }
}

void CollapseEngine::protect(uint32_t sub_index) { root_[sub_index] = 1; }

uint64_t CollapseEngine::run_phase(TieBreak tb,
                                   std::vector<CollapsedPair>* pairs) {
  // freeze the free set: candidates that are really at degree 1 now
  std::vector<uint32_t> free_subs;
  free_subs.reserve(candidates_.size());
  for (uint32_t s : candidates_)
    if (deg_[s] == 1 && !root_[s]) free_subs.push_back(s);
  candidates_.clear();

  if (tb == TieBreak::smallest_face_id)
    std::sort(free_subs.begin(), free_subs.end(),
              [this](uint32_t a, uint32_t b) {
                return idx_.sub_rank(a) < idx_.sub_rank(b);
              });
  else
    std::sort(free_subs.begin(), free_subs.end(),
              [this](uint32_t a, uint32_t b) {
                return idx_.sub_rank(a) > idx_.sub_rank(b);
              });

  uint64_t removed = 0;
  const uint32_t dp1 = idx_.d() + 1;
  for (uint32_t s : free_subs) {
    if (deg_[s] != 1) continue;  // its unique face fell to an earlier collapse
    auto [fb, fe] = idx_.sub_faces(s);
    uint64_t target = std::numeric_limits<uint64_t>::max();
    for (auto it = fb; it != fe; ++it)
      if (alive_[*it]) {
        target = *it;
        break;
      }
    if (target == std::numeric_limits<uint64_t>::max()) continue;
    alive_[target] = 0;
    --alive_count_;
    ++removed;
    if (pairs) pairs->push_back({idx_.sub_rank(s), 0});  // rank fixed below
    const uint32_t* subs = idx_.face_subs(target);
    for (uint32_t i = 0; i < dp1; ++i) {
      uint32_t t = subs[i];
      if (--deg_[t] == 1) candidates_.push_back(t);
    }
    if (pairs) pairs->back().sigma_rank = target;  // face index, mapped later
  }
  return removed;
}

uint32_t CollapseEngine::run_phases(uint64_t k, TieBreak tb,
                                    std::vector<CollapsedPair>* pairs) {
  uint32_t phases = 0;
  for (uint64_t i = 0; i < k; ++i) {
    if (run_phase(tb, pairs) == 0) break;
    ++phases;
  }
  return phases;
}

std::vector<uint64_t> CollapseEngine::alive_face_ranks(
    const Complex& y) const {
  std::vector<uint64_t> out;
  out.reserve(alive_count_);
  for (uint64_t f = 0; f < idx_.face_count(); ++f)
    if (alive_[f]) out.push_back(y.faces()[f]);
  return out;
}

Complex collapse_phases(const Complex& y, uint64_t k, TieBreak tb) {
  IncidenceIndex idx(y);
  CollapseEngine eng(idx);
  eng.run_phases(k, tb);
  return Complex(y.n(), y.d(), eng.alive_face_ranks(y));
}

CoreResult collapse_to_core(const Complex& y, TieBreak tb) {
  IncidenceIndex idx(y);
  CollapseEngine eng(idx);
  std::vector<CollapsedPair> pairs;
  uint32_t phases = eng.run_phases(std::numeric_limits<uint64_t>::max(), tb,
                                   &pairs);
  // collapse records face indices during the run; translate to ranks
  for (auto& pr : pairs) pr.sigma_rank = y.faces()[pr.sigma_rank];

  uint64_t retained = 0;
  for (uint32_t s = 0; s < idx.sub_count(); ++s)
    if (eng.sub_degree(s) >= 2) ++retained;

  CoreResult res{Complex(y.n(), y.d(), eng.alive_face_ranks(y)),
                 retained,
                 phases,
                 std::move(pairs),
                 false,
                 false,
                 {}};
  res.is_collapsible = res.core.f_d() == 0;
  auto gravel = is_gravel(res.core);
  res.is_gravel = gravel.is_gravel;
  res.gravel_components = std::move(gravel.components);
  return res;
}

StripCounts strip_exposed_counts(const Complex& rk_state) {
  IncidenceIndex idx(rk_state);
  StripCounts out;
  out.f_d = rk_state.f_d();
  for (uint32_t s = 0; s < idx.sub_count(); ++s)
    if (idx.degree(s) >= 1) ++out.f_dminus1;
  return out;
}

RootedScratch::RootedScratch(const IncidenceIndex& idx)
    : sub_epoch_(idx.sub_count(), 0),
      face_epoch_(idx.face_count(), 0),
      sub_local_(idx.sub_count()),
      face_local_(idx.face_count()) {}

int64_t rooted_collapse_degree(const IncidenceIndex& idx, uint64_t tau_rank,
                               uint64_t k, RootedScratch* scratch) {
  int64_t root = idx.find_sub(tau_rank);
  if (root < 0) return 0;  // exposed face stays exposed
  const uint32_t root_sub = static_cast<uint32_t>(root);

  std::unique_ptr<RootedScratch> own;
  if (!scratch) {
    own = std::make_unique<RootedScratch>(idx);
    scratch = own.get();
  }
  RootedScratch& sc = *scratch;
  const uint32_t ep = ++sc.epoch_;
  const uint32_t dp1 = idx.d() + 1;

  // BFS the ball of face-radius k+1 around the root
  std::vector<uint32_t> sub_globals, face_globals;
  auto touch_sub = [&](uint32_t g) {
    if (sc.sub_epoch_[g] != ep) {
      sc.sub_epoch_[g] = ep;
      sc.sub_local_[g] = static_cast<uint32_t>(sub_globals.size());
      sub_globals.push_back(g);
      return true;
    }
    return false;
  };
  touch_sub(root_sub);
  std::vector<uint32_t> frontier{root_sub}, next;
  for (uint64_t depth = 1; depth <= k + 1 && !frontier.empty(); ++depth) {
    next.clear();
    for (uint32_t s : frontier) {
      auto [fb, fe] = idx.sub_faces(s);
      for (auto it = fb; it != fe; ++it) {
        uint32_t f = *it;
        if (sc.face_epoch_[f] == ep) continue;
        sc.face_epoch_[f] = ep;
        sc.face_local_[f] = static_cast<uint32_t>(face_globals.size());
        face_globals.push_back(f);
        const uint32_t* subs = idx.face_subs(f);
        for (uint32_t i = 0; i < dp1; ++i)
          if (touch_sub(subs[i])) next.push_back(subs[i]);
      }
    }
    frontier.swap(next);
  }

  // local incidence: degrees, flat face->subs, CSR sub->faces
  const uint32_t ns = static_cast<uint32_t>(sub_globals.size());
  const uint32_t nf = static_cast<uint32_t>(face_globals.size());
  std::vector<int32_t> deg(ns, 0);
  std::vector<uint8_t> alive(nf, 1);
  std::vector<uint32_t> face_subs(static_cast<size_t>(nf) * dp1);
  for (uint32_t lf = 0; lf < nf; ++lf) {
    const uint32_t* subs = idx.face_subs(face_globals[lf]);
    for (uint32_t i = 0; i < dp1; ++i) {
      uint32_t ls = sc.sub_local_[subs[i]];
      face_subs[static_cast<size_t>(lf) * dp1 + i] = ls;
      ++deg[ls];
    }
  }
  std::vector<uint32_t> off(ns + 1, 0);
  for (uint32_t s = 0; s < ns; ++s) off[s + 1] = off[s] + deg[s];
  std::vector<uint32_t> sub_faces(off[ns]);
  {
    std::vector<uint32_t> cursor(off.begin(), off.end() - 1);
    for (uint32_t lf = 0; lf < nf; ++lf)
      for (uint32_t i = 0; i < dp1; ++i) {
        uint32_t ls = face_subs[static_cast<size_t>(lf) * dp1 + i];
        sub_faces[cursor[ls]++] = lf;
      }
  }

  const uint32_t root_local = sc.sub_local_[root_sub];
  std::vector<uint32_t> cand, frees;
  for (uint32_t s = 0; s < ns; ++s)
    if (deg[s] == 1 && s != root_local) cand.push_back(s);

  for (uint64_t phase = 0; phase < k && !cand.empty(); ++phase) {
    frees.clear();
    for (uint32_t s : cand)
      if (deg[s] == 1 && s != root_local) frees.push_back(s);
    cand.clear();
    std::sort(frees.begin(), frees.end(), [&](uint32_t a, uint32_t b) {
      return idx.sub_rank(sub_globals[a]) < idx.sub_rank(sub_globals[b]);
    });
    for (uint32_t s : frees) {
      if (deg[s] != 1) continue;
      uint32_t target = UINT32_MAX;
      for (uint32_t fi = off[s]; fi < off[s + 1]; ++fi)
        if (alive[sub_faces[fi]]) {
          target = sub_faces[fi];
          break;
        }
      if (target == UINT32_MAX) continue;
      alive[target] = 0;
      for (uint32_t i = 0; i < dp1; ++i) {
        uint32_t t = face_subs[static_cast<size_t>(target) * dp1 + i];
        if (--deg[t] == 1) cand.push_back(t);
      }
    }
  }
  return deg[root_local];
}

int64_t rooted_collapse_degree(const Complex& y, uint64_t tau_rank,
                               uint64_t k) {
  IncidenceIndex idx(y);
  return rooted_collapse_degree(idx, tau_rank, k);
}

GravelCheck is_gravel(const Complex& y) {
  GravelCheck out;
  const uint32_t dp1 = y.d() + 1;
  const uint64_t nf = y.f_d();
  if (nf == 0) {
    out.is_gravel = true;  // vacuous union
    return out;
  }
  // union faces sharing any vertex
  std::vector<uint32_t> parent(nf);
  for (uint32_t f = 0; f < nf; ++f) parent[f] = f;
  auto find = [&](uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto unite = [&](uint32_t a, uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[a] = b;
  };

  std::unordered_map<uint32_t, uint32_t> vertex_face;
  std::vector<uint32_t> verts(dp1);
  std::vector<std::vector<uint32_t>> face_verts(nf);
  for (uint64_t f = 0; f < nf; ++f) {
    face_unrank_into(y.faces()[f], y.n(), dp1, verts);
    face_verts[f].assign(verts.begin(), verts.end());
    for (uint32_t v : verts) {
      auto [it, ins] = vertex_face.try_emplace(v, (uint32_t)f);
      if (!ins) unite((uint32_t)f, it->second);
    }
  }

  std::unordered_map<uint32_t, std::vector<uint32_t>> comp_faces;
  for (uint32_t f = 0; f < nf; ++f) comp_faces[find(f)].push_back(f);

  for (auto& [root, members] : comp_faces) {
    if (members.size() != dp1 + 1) return out;  // need exactly d+2 faces
    std::vector<uint32_t> vs;
    for (uint32_t f : members)
      vs.insert(vs.end(), face_verts[f].begin(), face_verts[f].end());
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    // d+2 distinct faces on exactly d+2 vertices are all of them
    if (vs.size() != dp1 + 1) return out;
    out.components.push_back(std::move(vs));
  }
  std::sort(out.components.begin(), out.components.end());
  out.is_gravel = true;
  return out;
}

}  // namespace ydsim
