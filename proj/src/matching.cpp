#include "berge/matching.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "berge/errors.hpp"

namespace berge {

BipartiteGraph::BipartiteGraph(std::uint32_t left_count, std::uint32_t right_count,
                               std::vector<std::uint64_t> offsets, std::vector<std::uint32_t> targets,
                               std::vector<std::uint32_t> capacity)
    : left_count_(left_count),
      right_count_(right_count),
      offsets_(std::move(offsets)),
      targets_(std::move(targets)),
      capacity_(std::move(capacity)) {
    if (offsets_.size() != static_cast<std::size_t>(left_count_) + 1 || offsets_.front() != 0 ||
        offsets_.back() != targets_.size())
        throw InvalidArgument("BipartiteGraph: offsets do not match targets");
    if (!capacity_.empty() && capacity_.size() != right_count_)
        throw InvalidArgument("BipartiteGraph: capacity vector has wrong length");
    for (std::uint32_t u = 0; u < left_count_; ++u) {
        if (offsets_[u] > offsets_[u + 1]) throw InvalidArgument("BipartiteGraph: offsets not monotone");
        for (std::uint64_t i = offsets_[u]; i < offsets_[u + 1]; ++i) {
            if (targets_[i] >= right_count_)
                throw InvalidArgument("BipartiteGraph: neighbour " + std::to_string(targets_[i]) + " of left " +
                                      std::to_string(u) + " out of range");
            if (i > offsets_[u] && targets_[i - 1] >= targets_[i])
                throw InvalidArgument("BipartiteGraph: adjacency of left " + std::to_string(u) +
                                      " not strictly ascending");
        }
    }
}

BipartiteGraph BipartiteGraph::from_adjacency(std::uint32_t right_count,
                                              const std::vector<std::vector<std::uint32_t>>& adjacency,
                                              std::vector<std::uint32_t> capacity) {
    std::vector<std::uint64_t> offsets{0};
    std::vector<std::uint32_t> targets;
    for (const auto& row : adjacency) {
        targets.insert(targets.end(), row.begin(), row.end());
        offsets.push_back(targets.size());
    }
    return BipartiteGraph(static_cast<std::uint32_t>(adjacency.size()), right_count, std::move(offsets),
                          std::move(targets), std::move(capacity));
}

bool BipartiteGraph::has_edge(std::uint32_t u, std::uint32_t v) const noexcept {
    if (u >= left_count_) return false;
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::uint64_t BipartiteGraph::right_slots() const noexcept {
    if (capacity_.empty()) return right_count_;
    std::uint64_t total = 0;
    for (auto c : capacity_) total += c;
    return total;
}

std::uint64_t BipartiteGraph::memory_bytes() const noexcept {
    return offsets_.size() * sizeof(std::uint64_t) + targets_.size() * sizeof(std::uint32_t) +
           capacity_.size() * sizeof(std::uint32_t);
}

namespace {

constexpr std::uint32_t inf = std::numeric_limits<std::uint32_t>::max();

// Hopcroft-Karp over right "slots": right vertex v owns slots
// [slot_begin[v], slot_begin[v] + load[v]) holding its matched left vertices.
class Engine {
public:
    explicit Engine(const BipartiteGraph& g)
        : g_(g),
          nl_(g.left_count()),
          nr_(g.right_count()),
          mate_(nl_, unmatched),
          dist_(nl_, inf),
          rdist_(nr_, inf),
          load_(nr_, 0),
          slot_begin_(static_cast<std::size_t>(nr_) + 1, 0),
          it_(nl_, 0),
          rcur_(nr_, 0),
          look_(g.offsets().begin(), g.offsets().end() - 1),
          cur_(nl_, unmatched),
          lvis_(nl_, 0),
          rvis_(nr_, 0) {
        for (std::uint32_t v = 0; v < nr_; ++v) slot_begin_[v + 1] = slot_begin_[v] + g.capacity(v);
        slots_.assign(slot_begin_.back(), unmatched);
    }

    MatchingResult run_layered() {
        greedy();
        while (bfs()) {
            for (std::uint32_t u = 0; u < nl_; ++u) it_[u] = g_.offsets()[u];
            std::fill(rcur_.begin(), rcur_.end(), 0);
            for (std::uint32_t u = 0; u < nl_; ++u)
                if (mate_[u] == unmatched && dist_[u] == 0) augment(u);
        }
        return result();
    }

    MatchingResult run_dfs() {
        greedy();
        while (dfs_phase() > 0) {
        }
        return result();
    }

private:
    MatchingResult result() const {
        MatchingResult r;
        r.left_to_right = mate_;
        r.size = size_;
        if (size_ < nl_) r.violator = reachable_lefts();
        return r;
    }

    void assign(std::uint32_t u, std::uint32_t v) {
        slots_[slot_begin_[v] + load_[v]++] = u;
        mate_[u] = v;
    }

    // Left vertices in a fixed stride order (coprime to nl_), each taking the
    // neighbour with the largest free fraction of its capacity. First-fit in
    // index order leaves thousands of left vertices free on the pair graphs.
    void greedy() {
        std::uint64_t stride = nl_ > 0 ? 2654435761ULL % nl_ : 1;
        if (stride == 0) stride = 1;
        while (std::gcd(stride, static_cast<std::uint64_t>(nl_)) != 1) ++stride;
        for (std::uint64_t i = 0; i < nl_; ++i) {
            auto u = static_cast<std::uint32_t>(i * stride % nl_);
            std::uint32_t best = unmatched;
            std::uint64_t free_b = 0, cap_b = 1;
            for (std::uint32_t v : g_.neighbors(u)) {
                std::uint64_t cap = g_.capacity(v), free = cap - load_[v];
                if (free > 0 && free * cap_b > free_b * cap) {
                    best = v;
                    free_b = free;
                    cap_b = cap;
                }
            }
            if (best != unmatched) {
                assign(u, best);
                ++size_;
            }
        }
    }

    // Layers left vertices by alternating distance from the free ones; a right
    // vertex takes the layer of the first left vertex reaching it.
    bool bfs() {
        std::fill(dist_.begin(), dist_.end(), inf);
        std::fill(rdist_.begin(), rdist_.end(), inf);
        queue_.clear();
        for (std::uint32_t u = 0; u < nl_; ++u)
            if (mate_[u] == unmatched) {
                dist_[u] = 0;
                queue_.push_back(u);
            }
        std::uint32_t found = inf;
        for (std::size_t h = 0; h < queue_.size(); ++h) {
            std::uint32_t u = queue_[h];
            if (dist_[u] >= found) break;
            for (std::uint32_t v : g_.neighbors(u)) {
                if (rdist_[v] != inf) continue;
                rdist_[v] = dist_[u];
                if (load_[v] < g_.capacity(v)) {
                    found = dist_[u];
                    continue;
                }
                for (std::uint64_t s = slot_begin_[v]; s < slot_begin_[v] + load_[v]; ++s) {
                    std::uint32_t w = slots_[s];
                    if (dist_[w] == inf) {
                        dist_[w] = dist_[u] + 1;
                        queue_.push_back(w);
                    }
                }
            }
        }
        return found != inf;
    }

    // Iterative layered DFS from a free left vertex.
    bool augment(std::uint32_t root) {
        stack_.clear();
        via_.clear();
        stack_.push_back(root);
        const auto& off = g_.offsets();
        const auto& tgt = g_.targets();
        while (!stack_.empty()) {
            std::uint32_t u = stack_.back();
            bool pushed = false;
            while (it_[u] < off[u + 1]) {
                std::uint32_t v = tgt[it_[u]];
                if (rdist_[v] != dist_[u]) {
                    ++it_[u];
                    continue;
                }
                if (load_[v] < g_.capacity(v)) {
                    flip(v);
                    return true;
                }
                while (rcur_[v] < load_[v] && dist_[slots_[slot_begin_[v] + rcur_[v]]] != dist_[u] + 1) ++rcur_[v];
                if (rcur_[v] == load_[v]) {
                    ++it_[u];
                    continue;
                }
                via_.push_back(slot_begin_[v] + rcur_[v]);
                stack_.push_back(slots_[via_.back()]);
                pushed = true;
                break;
            }
            if (!pushed) {
                dist_[u] = inf;
                stack_.pop_back();
                if (!via_.empty()) via_.pop_back();
            }
        }
        return false;
    }

    // One round of depth-first searches over the whole graph, each right
    // vertex entered at most once; free slots are tried first at every left.
    std::uint64_t dfs_phase() {
        ++stamp_;
        const auto& off = g_.offsets();
        const auto& tgt = g_.targets();
        for (std::uint32_t u = 0; u < nl_; ++u) {
            it_[u] = off[u];
            cur_[u] = unmatched;
        }
        std::uint64_t found = 0;
        for (std::uint32_t root = 0; root < nl_; ++root) {
            if (mate_[root] != unmatched) continue;
            stack_.clear();
            via_.clear();
            stack_.push_back(root);
            lvis_[root] = stamp_;
            while (!stack_.empty()) {
                std::uint32_t u = stack_.back();
                bool done = false;
                for (; look_[u] < off[u + 1]; ++look_[u]) {
                    std::uint32_t v = tgt[look_[u]];
                    if (load_[v] < g_.capacity(v)) {
                        flip(v);
                        ++found;
                        done = true;
                        break;
                    }
                }
                if (done) break;
                bool pushed = false;
                for (;;) {
                    if (cur_[u] != unmatched) {
                        std::uint32_t v = cur_[u];
                        while (rcur_[v] < load_[v]) {
                            std::uint64_t s = slot_begin_[v] + rcur_[v]++;
                            std::uint32_t w = slots_[s];
                            if (lvis_[w] == stamp_) continue;
                            lvis_[w] = stamp_;
                            via_.push_back(s);
                            stack_.push_back(w);
                            pushed = true;
                            break;
                        }
                        if (pushed) break;
                        cur_[u] = unmatched;
                    }
                    if (it_[u] == off[u + 1]) break;
                    std::uint32_t v = tgt[it_[u]++];
                    if (rvis_[v] == stamp_) continue;
                    rvis_[v] = stamp_;
                    rcur_[v] = 0;
                    cur_[u] = v;
                }
                if (!pushed) {
                    stack_.pop_back();
                    if (!via_.empty()) via_.pop_back();
                }
            }
        }
        return found;
    }

    // stack_[i] takes the slot via_[i] from stack_[i+1]; the last one takes a
    // fresh slot of v.
    void flip(std::uint32_t v) {
        assign(stack_.back(), v);
        for (std::size_t i = via_.size(); i-- > 0;) {
            std::uint64_t s = via_[i];
            slots_[s] = stack_[i];
            mate_[stack_[i]] = static_cast<std::uint32_t>(
                std::upper_bound(slot_begin_.begin(), slot_begin_.end(), s) - slot_begin_.begin() - 1);
        }
        ++size_;
    }

    std::vector<std::uint32_t> reachable_lefts() const {
        std::vector<char> seen_l(nl_, 0), seen_r(nr_, 0);
        std::vector<std::uint32_t> queue;
        for (std::uint32_t u = 0; u < nl_; ++u)
            if (mate_[u] == unmatched) {
                seen_l[u] = 1;
                queue.push_back(u);
            }
        for (std::size_t h = 0; h < queue.size(); ++h)
            for (std::uint32_t v : g_.neighbors(queue[h])) {
                if (seen_r[v]) continue;
                seen_r[v] = 1;
                for (std::uint64_t s = slot_begin_[v]; s < slot_begin_[v] + load_[v]; ++s)
                    if (!seen_l[slots_[s]]) {
                        seen_l[slots_[s]] = 1;
                        queue.push_back(slots_[s]);
                    }
            }
        std::sort(queue.begin(), queue.end());
        return queue;
    }

    const BipartiteGraph& g_;
    std::uint32_t nl_, nr_;
    std::vector<std::uint32_t> mate_;
    std::vector<std::uint32_t> dist_;
    std::vector<std::uint32_t> rdist_;
    std::vector<std::uint32_t> load_;
    std::vector<std::uint64_t> slot_begin_;
    std::vector<std::uint32_t> slots_;
    std::vector<std::uint64_t> it_;
    std::vector<std::uint32_t> rcur_;
    std::vector<std::uint32_t> queue_;
    std::vector<std::uint64_t> look_;
    std::vector<std::uint32_t> cur_;
    std::vector<std::uint32_t> lvis_;
    std::vector<std::uint32_t> rvis_;
    std::uint32_t stamp_ = 0;
    std::vector<std::uint32_t> stack_;
    std::vector<std::uint64_t> via_;
    std::uint64_t size_ = 0;
};

}  // namespace

MatchingResult hopcroft_karp(const BipartiteGraph& g) { return Engine(g).run_layered(); }

MatchingResult pothen_fan(const BipartiteGraph& g) { return Engine(g).run_dfs(); }

MatchingResult maximum_matching(const BipartiteGraph& g, MatchingAlgorithm algo) {
    return algo == MatchingAlgorithm::hopcroft_karp ? hopcroft_karp(g) : pothen_fan(g);
}

std::vector<std::vector<std::uint32_t>> right_to_left(const BipartiteGraph& g, const MatchingResult& r) {
    std::vector<std::vector<std::uint32_t>> out(g.right_count());
    for (std::uint32_t u = 0; u < r.left_to_right.size(); ++u)
        if (r.left_to_right[u] != unmatched) out[r.left_to_right[u]].push_back(u);
    return out;
}

std::uint64_t neighbourhood_capacity(const BipartiteGraph& g, std::span<const std::uint32_t> lefts) {
    std::vector<char> seen(g.right_count(), 0);
    std::uint64_t total = 0;
    for (std::uint32_t u : lefts)
        for (std::uint32_t v : g.neighbors(u))
            if (!seen[v]) {
                seen[v] = 1;
                total += g.capacity(v);
            }
    return total;
}

CheckResult verify_matching(const BipartiteGraph& g, const MatchingResult& r) {
    if (r.left_to_right.size() != g.left_count()) return CheckResult::fail("pair map has wrong length");
    std::vector<std::uint32_t> load(g.right_count(), 0);
    std::uint64_t size = 0;
    for (std::uint32_t u = 0; u < g.left_count(); ++u) {
        std::uint32_t v = r.left_to_right[u];
        if (v == unmatched) continue;
        if (!g.has_edge(u, v))
            return CheckResult::fail("pair (" + std::to_string(u) + ", " + std::to_string(v) + ") is not an edge");
        if (++load[v] > g.capacity(v))
            return CheckResult::fail("right vertex " + std::to_string(v) + " matched beyond its capacity");
        ++size;
    }
    if (size != r.size) return CheckResult::fail("reported size " + std::to_string(r.size) + ", actual " + std::to_string(size));
    if (r.violator.has_value() != (size < g.left_count()))
        return CheckResult::fail(r.violator ? "violator present for a saturating matching" : "violator missing");
    if (r.violator) {
        auto s = *r.violator;
        std::sort(s.begin(), s.end());
        if (s.empty() || std::adjacent_find(s.begin(), s.end()) != s.end() || s.back() >= g.left_count())
            return CheckResult::fail("violator is not a set of left vertices");
        std::uint64_t nb = neighbourhood_capacity(g, s);
        if (nb >= s.size())
            return CheckResult::fail("violator has |N(S)| = " + std::to_string(nb) + " >= |S| = " + std::to_string(s.size()));
    }
    return CheckResult::pass();
}

}  // namespace berge
