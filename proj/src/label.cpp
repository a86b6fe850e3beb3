#include "pathwise/label.hpp"

#include "pathwise/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pathwise {

    bool dominates(const Label& a, const Label& b, const std::vector<bool>& exact) {
        if (a.cost > b.cost + kFeasibilityTol)
            return false;
        for (std::size_t k = 0; k < a.resources.size(); ++k) {
            if (k < exact.size() && exact[k]) {
                if (std::abs(a.resources[k] - b.resources[k]) > kFeasibilityTol)
                    return false;
            } else if (a.resources[k] > b.resources[k] + kFeasibilityTol) {
                return false;
            }
        }
        return union_is_subset(a.visited, a.unreachable, b.visited, b.unreachable);
    }

    // LabelPool

    LabelPool::LabelPool(std::size_t node_count, Direction direction, std::vector<bool> exact_resources)
        : _direction(direction), _exact(exact_resources.begin(), exact_resources.end()),
          _any_exact(std::find(exact_resources.begin(), exact_resources.end(), true) != exact_resources.end()),
          _buckets(node_count), _frontier(node_count), _key(node_count) {}

    void LabelPool::clear() {
        _labels.clear();
        _alive.clear();
        for (auto& b : _buckets)
            b = Bucket{};
        _value_stride = 0;
        _set_words    = 0;
        for (auto& f : _frontier)
            f.clear();
        std::fill(_key.begin(), _key.end(), std::nullopt);
        _by_cost.clear();
        _active.clear();
        _draining.reset();
        _cursor               = 0;
        _kept                 = 0;
        _dominated_on_arrival = 0;
        _removed              = 0;
    }

    void LabelPool::refresh_key(NodeId node) {
        const auto& f = _frontier[node];
        std::optional<double> key;
        if (!f.empty())
            key = f.begin()->first;
        if (key == _key[node])
            return;
        if (_key[node])
            _by_cost.erase({*_key[node], node});
        _key[node] = key;
        if (key) {
            _by_cost.insert({*key, node});
            _active.insert(node);
        } else {
            _active.erase(node);
        }
    }

    void LabelPool::frontier_erase(LabelId id) {
        const Label& l = _labels[id];
        if (_frontier[l.node].erase({l.cost, id}))
            refresh_key(l.node);
    }

    bool LabelPool::flat_dominates(
        const double* a, const NodeSet::word_t* a_set, const double* b, const NodeSet::word_t* b_set) const {
        if (a[0] > b[0] + kFeasibilityTol)
            return false;
        for (std::size_t k = 1; k < _value_stride; ++k) {
            if (_any_exact && k - 1 < _exact.size() && _exact[k - 1]) {
                if (std::abs(a[k] - b[k]) > kFeasibilityTol)
                    return false;
            } else if (a[k] > b[k] + kFeasibilityTol) {
                return false;
            }
        }
        for (std::size_t w = 0; w < _set_words; ++w)
            if (a_set[w] & ~b_set[w])
                return false;
        return true;
    }

    void LabelPool::compact(Bucket& bucket) const {
        std::size_t out = 0;
        for (std::size_t k = 0; k < bucket.ids.size(); ++k) {
            if (bucket.ids[k] == kNoLabel)
                continue;
            if (out != k) {
                bucket.ids[out] = bucket.ids[k];
                std::copy_n(bucket.values.begin() + k * _value_stride, _value_stride,
                    bucket.values.begin() + out * _value_stride);
                std::copy_n(bucket.sets.begin() + k * _set_words, _set_words, bucket.sets.begin() + out * _set_words);
            }
            ++out;
        }
        bucket.ids.resize(out);
        bucket.values.resize(out * _value_stride);
        bucket.sets.resize(out * _set_words);
        bucket.dead = 0;
    }

    InsertOutcome LabelPool::insert(Label label) {
        if (_labels.empty()) {
            _value_stride = 1 + label.resources.size();
            _set_words    = std::max(label.visited.words().size(), label.unreachable.words().size());
        }
        std::vector<double> values(_value_stride);
        values[0] = label.cost;
        std::copy(label.resources.begin(), label.resources.end(), values.begin() + 1);
        std::vector<NodeSet::word_t> set(_set_words, 0);
        const auto& visited     = label.visited.words();
        const auto& unreachable = label.unreachable.words();
        for (std::size_t w = 0; w < _set_words; ++w)
            set[w] = (w < visited.size() ? visited[w] : 0) | (w < unreachable.size() ? unreachable[w] : 0);

        Bucket& bucket = _buckets[label.node];
        std::vector<std::size_t> beaten;
        for (std::size_t k = 0; k < bucket.ids.size(); ++k) {
            if (bucket.ids[k] == kNoLabel)
                continue;
            const double* other         = bucket.values.data() + k * _value_stride;
            const NodeSet::word_t* oset = bucket.sets.data() + k * _set_words;
            if (flat_dominates(other, oset, values.data(), set.data())) {
                ++_dominated_on_arrival;
                return InsertOutcome::DominatedOnArrival;
            }
            if (flat_dominates(values.data(), set.data(), other, oset))
                beaten.push_back(k);
        }
        for (std::size_t k : beaten) {
            const LabelId old = bucket.ids[k];
            _alive[old]       = 0;
            frontier_erase(old);
            ++_removed;
            bucket.ids[k] = kNoLabel;
            ++bucket.dead;
        }
        if (bucket.dead > 16 && 2 * bucket.dead > bucket.ids.size())
            compact(bucket);

        const auto id     = static_cast<LabelId>(_labels.size());
        const NodeId node = label.node;
        const double cost = label.cost;
        _labels.push_back(std::move(label));
        _alive.push_back(1);
        bucket.ids.push_back(id);
        bucket.values.insert(bucket.values.end(), values.begin(), values.end());
        bucket.sets.insert(bucket.sets.end(), set.begin(), set.end());
        _frontier[node].insert({cost, id});
        refresh_key(node);
        ++_kept;
        return InsertOutcome::Kept;
    }

    std::vector<LabelId> LabelPool::bucket(NodeId node) const {
        std::vector<LabelId> ids;
        ids.reserve(bucket_size(node));
        for (LabelId id : _buckets[node].ids)
            if (id != kNoLabel)
                ids.push_back(id);
        std::sort(ids.begin(), ids.end(), [&](LabelId a, LabelId b) {
            const double ca = _labels[a].cost;
            const double cb = _labels[b].cost;
            return ca != cb ? ca < cb : a < b;
        });
        return ids;
    }

    std::optional<LabelId> LabelPool::get_candidate(SelectionStrategy strategy) {
        if (_active.empty())
            return std::nullopt;
        NodeId node = 0;
        if (strategy == SelectionStrategy::NodeSelection) {
            if (_draining && !_frontier[*_draining].empty()) {
                node = *_draining;
            } else {
                node      = _by_cost.begin()->second;
                _draining = node;
            }
        } else {
            auto it = _active.lower_bound(_cursor);
            if (it == _active.end())
                it = _active.begin();
            node    = *it;
            _cursor = node + 1;
        }
        auto& f          = _frontier[node];
        const LabelId id = f.begin()->second;
        f.erase(f.begin());
        refresh_key(node);
        return id;
    }

    std::vector<LabelId> LabelPool::lookup(NodeId node, const std::function<bool(const Label&)>& predicate) const {
        std::vector<LabelId> out;
        for (LabelId id : bucket(node))
            if (predicate(_labels[id]))
                out.push_back(id);
        return out;
    }

    std::vector<NodeId> LabelPool::chain(LabelId id) const {
        std::vector<NodeId> nodes;
        for (LabelId cur = id; cur != kNoLabel; cur = _labels[cur].predecessor) {
            if (nodes.size() > _labels.size())
                throw DecodeMismatch("predecessor chain does not terminate");
            nodes.push_back(_labels[cur].node);
        }
        std::reverse(nodes.begin(), nodes.end());
        return nodes;
    }

    // LabelManager

    namespace {

        std::vector<bool> exact_flags(const Problem& problem) {
            std::vector<bool> exact(problem.resource_count());
            for (std::size_t k = 0; k < exact.size(); ++k)
                exact[k] = problem.resource(k).has_lower_bound();
            return exact;
        }

        bool better(double cost, bool elementary, const std::vector<NodeId>& tour, const Path& incumbent) {
            if (cost < incumbent.cost - kFeasibilityTol)
                return true;
            if (cost > incumbent.cost + kFeasibilityTol)
                return false;
            if (elementary != incumbent.elementary)
                return elementary;
            return tour < incumbent.tour;
        }

    } // namespace

    LabelManager::LabelManager(const Problem& problem, const NeighborhoodMasks& masks, LabelOptions options)
        : _problem(problem), _masks(masks), _options(options), _critical(problem.critical_index()),
          _budget(problem.critical().critical_budget()), _exact(exact_flags(problem)),
          _pools{LabelPool(problem.node_count(), Direction::Forward, _exact),
              LabelPool(problem.node_count(), Direction::Backward, _exact)} {}

    void LabelManager::fill_unreachable(Label& label) const {
        // Recomputed from scratch; monotone consumption makes this a superset of the parent's set. Only
        // nodes some mask can remember take part in dominance, so the others are left out.
        label.unreachable = NodeSet(_problem.node_count());
        const auto& resources = _problem.resources();
        for (NodeId k : _remembered) {
            if (k == label.node || label.visited.test(k))
                continue;
            for (std::size_t r = 0; r < resources.size(); ++r) {
                if (resources[r]->excludes(label.resources[r], k, label.direction)) {
                    label.unreachable.set(k);
                    break;
                }
            }
        }
    }

    Label LabelManager::initial_label(Direction dir) const {
        const NodeId node = dir == Direction::Forward ? _problem.source() : _problem.destination();
        Label label;
        label.node      = node;
        label.direction = dir;
        label.resources.resize(_problem.resource_count());
        for (std::size_t k = 0; k < _problem.resource_count(); ++k) {
            const auto [fw, bw] = _problem.resource(k).init(_problem.source(), _problem.destination());
            label.resources[k]  = dir == Direction::Forward ? fw : bw;
            if (!_problem.resource(k).is_feasible(label.resources[k], node, dir))
                throw InfeasibleAtSource("resource " + std::to_string(k) + " infeasible at the root label");
        }
        if (_options.track_visited) {
            label.visited = NodeSet(_problem.node_count());
            label.visited.set(node);
        }
        if (_options.track_unreachable && _options.track_visited)
            fill_unreachable(label);
        return label;
    }

    void LabelManager::reset(bool with_backward) {
        for (auto& p : _pools)
            p.clear();
        _remembered.clear();
        if (_options.track_visited) {
            const std::size_t n = _problem.node_count();
            for (NodeId k = 0; k < n; ++k)
                for (NodeId j = 0; j < n; ++j)
                    if (j != k && _masks.contains(j, k)) {
                        _remembered.push_back(k);
                        break;
                    }
        }
        pool(Direction::Forward).insert(initial_label(Direction::Forward));
        if (with_backward)
            pool(Direction::Backward).insert(initial_label(Direction::Backward));
    }

    double LabelManager::threshold(Direction dir, double hwp) const {
        return dir == Direction::Forward ? hwp : _budget - hwp;
    }

    bool LabelManager::passes_threshold(const Label& label, double hwp) const {
        return label.resources[_critical] <= threshold(label.direction, hwp) + kFeasibilityTol;
    }

    std::optional<Label> LabelManager::extend_label(const Label& label, NodeId j, ArcId arc) const {
        if (label.visited.test(j))
            return std::nullopt;
        const Direction dir = label.direction;
        Label out;
        out.node      = j;
        out.direction = dir;
        out.cost      = label.cost + _problem.cost(arc);
        out.resources.resize(label.resources.size());
        for (std::size_t k = 0; k < label.resources.size(); ++k) {
            const Resource& r = _problem.resource(k);
            out.resources[k]  = r.extend(label.resources[k], label.node, j, arc, dir);
            if (!r.is_feasible(out.resources[k], j, dir))
                return std::nullopt;
        }
        if (_options.track_visited) {
            out.visited = label.visited;
            out.visited &= _masks.mask(j);
            out.visited.set(j);
        }
        if (_options.track_unreachable && _options.track_visited)
            fill_unreachable(out);
        return out;
    }

    bool LabelManager::is_extension_feasible(const Label& label, NodeId j, double hwp) const {
        const Graph& g = _problem.graph();
        if (j >= g.node_count())
            return false;
        const auto arc = label.direction == Direction::Forward ? g.arc_id(label.node, j) : g.arc_id(j, label.node);
        if (!arc)
            return false;
        return passes_threshold(label, hwp) && extend_label(label, j, *arc).has_value();
    }

    std::optional<LabelId> LabelManager::next_candidate(Direction dir, SelectionStrategy strategy) {
        return pool(dir).get_candidate(strategy);
    }

    ExpansionCounts LabelManager::expand(Direction dir, LabelId id, double hwp) {
        ExpansionCounts counts;
        LabelPool& p = pool(dir);
        // Deque storage keeps this reference valid while new labels are appended.
        const Label& label = p.label(id);
        const Graph& g     = _problem.graph();
        const bool forward = dir == Direction::Forward;
        const NodeId stop  = forward ? _problem.destination() : _problem.source();
        const NodeId root  = forward ? _problem.source() : _problem.destination();
        if (label.node == stop || !passes_threshold(label, hwp))
            return counts;

        const auto neighbors = forward ? g.out_neighbors(label.node) : g.in_neighbors(label.node);
        const auto arcs      = forward ? g.out_arcs(label.node) : g.in_arcs(label.node);
        for (std::size_t k = 0; k < neighbors.size(); ++k) {
            const NodeId j = neighbors[k];
            if (j == root)
                continue;
            auto next = extend_label(label, j, arcs[k]);
            if (!next)
                continue;
            next->predecessor = id;
            ++counts.generated;
            if (p.insert(std::move(*next)) == InsertOutcome::Kept)
                ++counts.kept;
            else
                ++counts.dominated;
        }
        return counts;
    }

    std::optional<double> LabelManager::evaluate_pair(const Label* fw, const Label* bw, std::optional<ArcId> arc) const {
        const std::size_t r = _problem.resource_count();
        if (fw && bw) {
            if (fw->visited.intersects(bw->visited))
                return std::nullopt;
            for (std::size_t k = 0; k < r; ++k) {
                const Resource& res = _problem.resource(k);
                const auto total = res.join(fw->resources[k], bw->resources[k], fw->node, bw->node, *arc);
                if (!total || !res.accepts_total(*total))
                    return std::nullopt;
            }
            return fw->cost + _problem.cost(*arc) + bw->cost;
        }
        const Label* only = fw ? fw : bw;
        for (std::size_t k = 0; k < r; ++k)
            if (!_problem.resource(k).accepts_total(only->resources[k]))
                return std::nullopt;
        return only->cost;
    }

    std::vector<NodeId> LabelManager::decode(std::optional<LabelId> fw, std::optional<LabelId> bw) const {
        std::vector<NodeId> tour;
        if (fw)
            tour = pool(Direction::Forward).chain(*fw);
        if (bw) {
            auto tail = pool(Direction::Backward).chain(*bw);
            tour.insert(tour.end(), tail.rbegin(), tail.rend());
        }
        return tour;
    }

    Path LabelManager::extract_path(std::optional<LabelId> fw, std::optional<LabelId> bw) const {
        if (!fw && !bw)
            throw DecodeMismatch("nothing to decode");
        double expected = 0.0;
        if (fw)
            expected += pool(Direction::Forward).label(*fw).cost;
        if (bw)
            expected += pool(Direction::Backward).label(*bw).cost;
        if (fw && bw) {
            const auto arc = _problem.graph().arc_id(
                pool(Direction::Forward).label(*fw).node, pool(Direction::Backward).label(*bw).node);
            if (!arc)
                throw DecodeMismatch("joined labels are not connected by an arc");
            expected += _problem.cost(*arc);
        }
        return evaluate_path(_problem, decode(fw, bw), expected);
    }

    std::optional<Path> LabelManager::join_pair(LabelId fw, LabelId bw, double incumbent, JoinMode mode) const {
        const Label& f = pool(Direction::Forward).label(fw);
        const Label& b = pool(Direction::Backward).label(bw);
        const auto arc = _problem.graph().arc_id(f.node, b.node);
        if (!arc)
            return std::nullopt;
        if (mode == JoinMode::Bounded && f.cost + _problem.cost(*arc) + b.cost >= incumbent - kFeasibilityTol)
            return std::nullopt;
        if (!evaluate_pair(&f, &b, arc))
            return std::nullopt;
        return extract_path(fw, bw);
    }

    JoinResult LabelManager::join(JoinMode mode, double incumbent, double hwp) const {
        JoinResult result;
        const LabelPool& fpool = pool(Direction::Forward);
        const LabelPool& bpool = pool(Direction::Backward);
        const Graph& g         = _problem.graph();

        auto consider = [&](std::optional<LabelId> fw, std::optional<LabelId> bw, std::optional<ArcId> arc) {
            ++result.attempts;
            const auto total = evaluate_pair(fw ? &fpool.label(*fw) : nullptr, bw ? &bpool.label(*bw) : nullptr, arc);
            if (!total)
                return;
            ++result.successes;
            const bool may_lead = !result.best || *total <= result.best->cost + kFeasibilityTol;
            const bool may_lead_elementary =
                !result.best_elementary || *total <= result.best_elementary->cost + kFeasibilityTol;
            if (!may_lead && !may_lead_elementary)
                return;
            Path path = extract_path(fw, bw);
            if (!result.best || better(path.cost, path.elementary, path.tour, *result.best))
                result.best = path;
            if (path.elementary
                && (!result.best_elementary || better(path.cost, true, path.tour, *result.best_elementary)))
                result.best_elementary = std::move(path);
        };

        // Complete paths held by one direction alone. Bounded mode skips those not below the incumbent.
        const bool bounded = mode == JoinMode::Bounded;
        for (LabelId id : fpool.bucket(_problem.destination()))
            if (!bounded || fpool.label(id).cost < incumbent - kFeasibilityTol)
                consider(id, std::nullopt, std::nullopt);
        for (LabelId id : bpool.bucket(_problem.source()))
            if (!bounded || bpool.label(id).cost < incumbent - kFeasibilityTol)
                consider(std::nullopt, id, std::nullopt);

        if (!bounded) {
            std::vector<std::vector<LabelId>> backward(g.node_count());
            for (NodeId j = 0; j < g.node_count(); ++j)
                backward[j] = bpool.bucket(j);
            for (NodeId i = 0; i < g.node_count(); ++i)
                for (LabelId f : fpool.bucket(i))
                    for (NodeId j = 0; j < g.node_count(); ++j)
                        for (LabelId b : backward[j])
                            if (auto arc = g.arc_id(i, j))
                                consider(f, b, arc);
            return result;
        }

        auto pruned = [&](double total) {
            if (total >= incumbent - kFeasibilityTol)
                return true;
            return result.best && total > result.best->cost + kFeasibilityTol;
        };
        auto sorted_bucket = [](const LabelPool& p, NodeId node) { return p.bucket(node); };
        std::vector<std::vector<LabelId>> fw_sorted(g.node_count());
        std::vector<std::vector<LabelId>> bw_sorted(g.node_count());
        for (NodeId v = 0; v < g.node_count(); ++v) {
            fw_sorted[v] = sorted_bucket(fpool, v);
            std::erase_if(fw_sorted[v], [&](LabelId id) { return !passes_threshold(fpool.label(id), hwp); });
            bw_sorted[v] = sorted_bucket(bpool, v);
        }

        // Flat copies of the backward resource vectors, screened against each forward label's slack.
        const std::size_t r = _problem.resource_count();
        std::vector<double> limits(r);
        for (std::size_t k = 0; k < r; ++k)
            limits[k] = _problem.resource(k).join_limit() + kFeasibilityTol;
        std::vector<std::vector<double>> bw_values(g.node_count());
        std::vector<std::vector<double>> bw_costs(g.node_count());
        for (NodeId v = 0; v < g.node_count(); ++v) {
            auto& flat = bw_values[v];
            flat.reserve(bw_sorted[v].size() * r);
            bw_costs[v].reserve(bw_sorted[v].size());
            for (LabelId b : bw_sorted[v]) {
                flat.insert(flat.end(), bpool.label(b).resources.begin(), bpool.label(b).resources.end());
                bw_costs[v].push_back(bpool.label(b).cost);
            }
        }
        std::vector<double> slack(r);

        // Visit arcs by the cheapest pair they could produce, so a strong best is found early and the
        // scan can stop at the first arc whose bound is already pruned.
        std::vector<std::pair<double, ArcId>> order;
        for (ArcId a = 0; a < g.arc_count(); ++a) {
            const auto& fws = fw_sorted[g.arc(a).tail];
            const auto& bws = bw_sorted[g.arc(a).head];
            if (fws.empty() || bws.empty())
                continue;
            order.emplace_back(fpool.label(fws.front()).cost + _problem.cost(a) + bpool.label(bws.front()).cost, a);
        }
        std::sort(order.begin(), order.end());
        for (const auto& [bound, a] : order) {
            if (pruned(bound))
                break;
            const auto& fws          = fw_sorted[g.arc(a).tail];
            const auto& bws          = bw_sorted[g.arc(a).head];
            const double* values     = bw_values[g.arc(a).head].data();
            const double* costs      = bw_costs[g.arc(a).head].data();
            const double arc_cost    = _problem.cost(a);
            const double cheapest_bw = costs[0];
            for (LabelId f : fws) {
                const Label& fl   = fpool.label(f);
                const double head = fl.cost + arc_cost;
                if (pruned(head + cheapest_bw))
                    break;
                for (std::size_t k = 0; k < r; ++k)
                    slack[k] = limits[k] - fl.resources[k];
                for (std::size_t pos = 0; pos < bws.size(); ++pos) {
                    if (pruned(head + costs[pos]))
                        break;
                    const double* bv = values + pos * r;
                    bool fits        = true;
                    for (std::size_t k = 0; k < r && fits; ++k)
                        fits = bv[k] <= slack[k];
                    if (fits) {
                        consider(f, bws[pos], a);
                    } else {
                        ++result.attempts;
                    }
                }
            }
        }
        return result;
    }

    std::vector<LabelId> LabelManager::lookup(
        NodeId node, Direction dir, const std::function<bool(const Label&)>& predicate) const {
        return pool(dir).lookup(node, predicate);
    }

    std::vector<Label> LabelManager::replay(std::span<const NodeId> tour) const {
        std::vector<Label> labels;
        if (tour.empty() || tour.front() != _problem.source())
            return labels;
        labels.push_back(initial_label(Direction::Forward));
        for (std::size_t pos = 1; pos < tour.size(); ++pos) {
            const auto arc = _problem.graph().arc_id(tour[pos - 1], tour[pos]);
            if (!arc)
                break;
            auto next = extend_label(labels.back(), tour[pos], *arc);
            if (!next)
                break;
            next->predecessor = static_cast<LabelId>(labels.size() - 1);
            labels.push_back(std::move(*next));
        }
        return labels;
    }

} // namespace pathwise
