#include "sepsys/search.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <span>
#include <atomic>
#include <bit>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <thread>

#include "sepsys/verify.hpp"

namespace sepsys::search {

namespace {

using Clock = std::chrono::steady_clock;

enum class CellKind { nice, unique_subset };

// cells[x] lists the cells occupied by subset x of the ground.
struct CellModel {
    int m = 0;
    int num_cells = 0;
    std::vector<std::vector<std::uint16_t>> cells;
};

// Subsets of an m-ground with at most k elements, ordered by (size, value).
std::vector<Bits> small_subsets(int m, int k)
{
    std::vector<Bits> out;
    for (Bits s = 0; s < (Bits{1} << m); ++s)
        if (popcount(s) <= k)
            out.push_back(s);
    std::stable_sort(out.begin(), out.end(), [](Bits a, Bits b) { return popcount(a) < popcount(b); });
    return out;
}

// Index of pattern (x & s) among the 2^|s| patterns on s.
unsigned compress(Bits x, Bits s)
{
    unsigned out = 0;
    unsigned bit = 0;
    while (s != 0) {
        const Bits low = s & (~s + 1);
        if ((x & low) != 0)
            out |= 1u << bit;
        ++bit;
        s &= s - 1;
    }
    return out;
}

CellModel build_model(CellKind kind, int m, int k)
{
    CellModel model;
    model.m = m;
    const std::vector<Bits> seps = small_subsets(m, k);
    const Bits universe = Bits{1} << m;
    model.cells.resize(static_cast<std::size_t>(universe));
    if (kind == CellKind::nice) {
        std::vector<int> base;
        int next = 0;
        for (Bits s : seps) {
            base.push_back(next);
            next += 1 << popcount(s);
        }
        model.num_cells = next;
        for (Bits x = 0; x < universe; ++x)
            for (std::size_t i = 0; i < seps.size(); ++i)
                model.cells[x].push_back(static_cast<std::uint16_t>(base[i] + static_cast<int>(compress(x, seps[i]))));
    } else {
        model.num_cells = static_cast<int>(seps.size());
        for (Bits x = 0; x < universe; ++x)
            for (std::size_t i = 0; i < seps.size(); ++i)
                if (is_subset(seps[i], x))
                    model.cells[x].push_back(static_cast<std::uint16_t>(i));
    }
    return model;
}

// rank[a * 2^m + b] orders pairs {a, b} by the canonical form of their orbit.
struct PairOrbits {
    std::vector<std::uint16_t> rank;
    std::vector<std::pair<Bits, Bits>> representatives;
};

PairOrbits build_pair_orbits(int m, SymmetryGroup group)
{
    const Bits universe = Bits{1} << m;
    std::map<std::pair<Bits, Bits>, std::vector<std::pair<Bits, Bits>>> orbits;
    for (Bits a = 0; a < universe; ++a) {
        for (Bits b = a + 1; b < universe; ++b) {
            Family c = canonical_form(Family(m, {a, b}), group);
            orbits[{c[0], c[1]}].push_back({a, b});
        }
    }
    PairOrbits out;
    out.rank.assign(static_cast<std::size_t>(universe * universe), 0);
    std::uint16_t r = 0;
    for (const auto& [rep, members] : orbits) {
        out.representatives.push_back(rep);
        for (auto [a, b] : members) {
            out.rank[a * universe + b] = r;
            out.rank[b * universe + a] = r;
        }
        ++r;
    }
    return out;
}

// Shared between workers of one search call.
struct Shared {
    std::optional<Clock::time_point> deadline;
    std::atomic<bool> timed_out{false};
    // exists mode: lowest task index that found a witness
    std::atomic<std::size_t> winner{std::numeric_limits<std::size_t>::max()};
};

// Branch-and-bound over strictly increasing member sequences.
class Explorer {
public:
    Explorer(const CellModel& model, Shared& shared)
        : model_(model), shared_(shared), count_(static_cast<std::size_t>(model.num_cells), 0),
          position_sum_(static_cast<std::size_t>(model.num_cells), 0)
    {
    }

    // Feasible = x gets a private cell and no member loses its last one.
    bool feasible(Bits x)
    {
        int own = 0;
        bool ok = true;
        touched_.clear();
        for (auto c : model_.cells[x]) {
            if (count_[c] == 0) {
                ++own;
            } else if (count_[c] == 1) {
                const int o = position_sum_[c];
                if (kills_[o]++ == 0)
                    touched_.push_back(o);
                if (kills_[o] >= private_[o])
                    ok = false;
            }
        }
        for (int o : touched_)
            kills_[o] = 0;
        return ok && own > 0;
    }

    void push(Bits x)
    {
        const int pos = static_cast<int>(family_.size());
        family_.push_back(x);
        private_[pos] = 0;
        for (auto c : model_.cells[x]) {
            if (count_[c] == 0)
                ++private_[pos];
            else if (count_[c] == 1)
                --private_[position_sum_[c]];
            ++count_[c];
            position_sum_[c] += pos;
        }
    }

    void pop()
    {
        const Bits x = family_.back();
        const int pos = static_cast<int>(family_.size()) - 1;
        for (auto c : model_.cells[x]) {
            --count_[c];
            position_sum_[c] -= pos;
            // the surviving occupant regains this cell as private
            if (count_[c] == 1)
                ++private_[position_sum_[c]];
        }
        family_.pop_back();
    }

    void set_pair_filter(const PairOrbits* orbits, std::uint16_t min_rank)
    {
        orbits_ = orbits;
        min_rank_ = min_rank;
    }

    bool pair_ok(Bits x) const
    {
        if (orbits_ == nullptr)
            return true;
        const Bits universe = Bits{1} << model_.m;
        for (Bits y : family_)
            if (orbits_->rank[y * universe + x] < min_rank_)
                return false;
        return true;
    }

    std::vector<Bits> extensions(std::span<const Bits> candidates)
    {
        std::vector<Bits> out;
        out.reserve(candidates.size());
        for (Bits y : candidates)
            if (pair_ok(y) && feasible(y))
                out.push_back(y);
        return out;
    }

    // Max mode: finds families larger than `floor`.
    void maximize(std::span<const Bits> candidates, int floor)
    {
        best_ = floor;
        target_ = -1;
        descend(candidates);
    }

    // Exists mode: stops at the first family of size `target`.
    void reach(std::span<const Bits> candidates, int target, std::size_t task)
    {
        best_ = target - 1;
        target_ = target;
        task_ = task;
        descend(candidates);
    }

    const std::vector<Bits>& family() const { return family_; }
    int best() const { return best_; }
    const std::vector<Bits>& best_family() const { return best_family_; }
    std::uint64_t nodes() const { return nodes_; }
    bool stopped() const { return stopped_; }

private:
    bool out_of_time()
    {
        if ((nodes_ & 0xfff) == 1 && shared_.deadline && Clock::now() >= *shared_.deadline)
            shared_.timed_out.store(true, std::memory_order_relaxed);
        if (shared_.timed_out.load(std::memory_order_relaxed))
            return true;
        return target_ > 0 && shared_.winner.load(std::memory_order_relaxed) < task_;
    }

    void descend(std::span<const Bits> candidates)
    {
        ++nodes_;
        if (out_of_time()) {
            stopped_ = true;
            return;
        }
        const int size = static_cast<int>(family_.size());
        if (size > best_) {
            best_ = size;
            best_family_ = family_;
            if (target_ > 0 && size >= target_) {
                done_ = true;
                return;
            }
        }
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (size + static_cast<int>(candidates.size() - i) <= best_)
                return;
            const Bits x = candidates[i];
            push(x);
            std::vector<Bits> next = extensions(candidates.subspan(i + 1));
            if (size + 1 + static_cast<int>(next.size()) > best_)
                descend(next);
            pop();
            if (done_ || stopped_)
                return;
        }
    }

    const CellModel& model_;
    Shared& shared_;
    std::vector<std::uint8_t> count_;
    // sum of member positions in each cell; equals the occupant when count is 1
    std::vector<int> position_sum_;
    std::array<int, 64> private_{};
    std::array<int, 64> kills_{};
    std::vector<int> touched_;
    std::vector<Bits> family_;
    const PairOrbits* orbits_ = nullptr;
    std::uint16_t min_rank_ = 0;

    int best_ = 0;
    int target_ = -1;
    std::size_t task_ = 0;
    std::vector<Bits> best_family_;
    std::uint64_t nodes_ = 0;
    bool done_ = false;
    bool stopped_ = false;
};

// One independent subtree: a fixed prefix plus the candidates allowed after it.
struct Task {
    std::vector<Bits> prefix;
    std::vector<Bits> candidates;
    std::uint16_t min_rank = 0;
};

struct TaskResult {
    int best = 0;
    std::vector<Bits> family;
    std::uint64_t nodes = 0;
    bool stopped = false;
    bool found = false;
};

struct Plan {
    std::vector<Task> tasks;
    // Best family known before any task runs (a singleton, or a seed pair).
    std::vector<Bits> initial;
    std::uint64_t nodes = 0;
};

// Splits the search space into tasks. With symmetry, every family of two or more
// members is equivalent to one containing the representative of its least pair
// orbit, with all its other pairs in that orbit or later ones.
Plan make_plan(const CellModel& model, const PairOrbits* orbits, Shared& shared)
{
    Plan plan;
    const Bits universe = Bits{1} << model.m;
    plan.initial = {0};

    auto split = [&](Explorer& ex, const std::vector<Bits>& cands, std::uint16_t min_rank) {
        for (std::size_t i = 0; i < cands.size(); ++i) {
            ex.push(cands[i]);
            Task t;
            t.prefix = ex.family();
            t.candidates = ex.extensions(std::span<const Bits>(cands).subspan(i + 1));
            t.min_rank = min_rank;
            plan.tasks.push_back(std::move(t));
            ex.pop();
        }
    };

    if (orbits == nullptr) {
        Explorer ex(model, shared);
        std::vector<Bits> all;
        for (Bits x = 0; x < universe; ++x)
            all.push_back(x);
        split(ex, all, 0);
        return plan;
    }

    for (std::size_t r = 0; r < orbits->representatives.size(); ++r) {
        const auto [a, b] = orbits->representatives[r];
        Explorer ex(model, shared);
        ex.set_pair_filter(orbits, static_cast<std::uint16_t>(r));
        ++plan.nodes;
        ex.push(a);
        if (!ex.feasible(b))
            continue;
        ex.push(b);
        if (plan.initial.size() < 2)
            plan.initial = {a, b};
        std::vector<Bits> rest;
        for (Bits x = 0; x < universe; ++x)
            if (x != a && x != b)
                rest.push_back(x);
        std::vector<Bits> cands = ex.extensions(rest);
        split(ex, cands, static_cast<std::uint16_t>(r));
    }
    return plan;
}

TaskResult run_task(const CellModel& model, const PairOrbits* orbits, Shared& shared, const Task& task,
                    int floor, int target, std::size_t index)
{
    Explorer ex(model, shared);
    ex.set_pair_filter(orbits, task.min_rank);
    for (Bits x : task.prefix)
        ex.push(x);
    if (target > 0)
        ex.reach(task.candidates, target, index);
    else
        ex.maximize(task.candidates, floor);
    TaskResult r;
    r.best = ex.best();
    r.family = ex.best_family();
    r.nodes = ex.nodes();
    r.stopped = ex.stopped();
    r.found = target > 0 && !r.family.empty() && static_cast<int>(r.family.size()) >= target;
    if (r.found)
        shared.winner.store(std::min(shared.winner.load(), index));
    return r;
}

// Runs tasks [first, tasks.size()) on `threads` workers, handing out indices in order.
void run_all(const Plan& plan, std::size_t first, int threads,
             const std::function<TaskResult(std::size_t)>& work, std::vector<TaskResult>& results)
{
    std::atomic<std::size_t> next{first};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= plan.tasks.size())
                return;
            results[i] = work(i);
        }
    };
    const int n = std::max(1, threads);
    if (n == 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
}

struct EngineResult {
    int best = 0;
    std::vector<Bits> family;
    std::uint64_t nodes = 0;
    bool exhausted = true;
    bool found = false;
};

const PairOrbits* orbits_for(int m, SymmetryGroup group)
{
    static std::mutex lock;
    static std::map<std::pair<int, int>, PairOrbits> cache;
    std::lock_guard guard(lock);
    auto key = std::make_pair(m, static_cast<int>(group));
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, build_pair_orbits(m, group)).first;
    return &it->second;
}

EngineResult maximize(const CellModel& model, SymmetryGroup group, const SearchOptions& opts)
{
    Shared shared;
    if (opts.budget)
        shared.deadline = Clock::now() + *opts.budget;
    const PairOrbits* orbits = opts.symmetry && model.m >= 1 ? orbits_for(model.m, group) : nullptr;
    const Plan plan = make_plan(model, orbits, shared);

    EngineResult out;
    out.best = static_cast<int>(plan.initial.size());
    out.family = plan.initial;
    out.nodes = plan.nodes;
    if (plan.tasks.empty())
        return out;

    std::vector<TaskResult> results(plan.tasks.size());
    // Task 0 runs alone so every other task can start from its result; the
    // outcome is then independent of scheduling.
    results[0] = run_task(model, orbits, shared, plan.tasks[0], out.best, -1, 0);
    const int floor = std::max(out.best, results[0].best);
    run_all(plan, 1, opts.threads,
            [&](std::size_t i) { return run_task(model, orbits, shared, plan.tasks[i], floor, -1, i); },
            results);

    for (const auto& r : results) {
        out.nodes += r.nodes;
        out.exhausted = out.exhausted && !r.stopped;
        if (r.best > out.best && !r.family.empty()) {
            out.best = r.best;
            out.family = r.family;
        }
    }
    return out;
}

EngineResult reach(const CellModel& model, SymmetryGroup group, int target, const SearchOptions& opts)
{
    EngineResult out;
    const Bits universe = Bits{1} << model.m;
    if (target <= 0) {
        out.found = true;
        return out;
    }
    if (static_cast<Bits>(target) > universe) {
        out.found = false;
        return out;
    }
    Shared shared;
    if (opts.budget)
        shared.deadline = Clock::now() + *opts.budget;
    const PairOrbits* orbits = opts.symmetry && model.m >= 1 ? orbits_for(model.m, group) : nullptr;
    const Plan plan = make_plan(model, orbits, shared);
    out.nodes = plan.nodes;
    if (static_cast<int>(plan.initial.size()) >= target) {
        out.found = true;
        out.family.assign(plan.initial.begin(), plan.initial.begin() + target);
        return out;
    }

    std::vector<TaskResult> results(plan.tasks.size());
    run_all(plan, 0, opts.threads,
            [&](std::size_t i) { return run_task(model, orbits, shared, plan.tasks[i], 0, target, i); },
            results);

    const std::size_t winner = shared.winner.load();
    for (std::size_t i = 0; i < results.size() && i <= winner; ++i) {
        out.nodes += results[i].nodes;
        if (i < winner)
            out.exhausted = out.exhausted && !results[i].stopped;
    }
    if (winner < results.size()) {
        out.found = true;
        out.family = results[winner].family;
    }
    return out;
}

void require_k(int k)
{
    if (k < 1)
        throw Error(ErrorKind::parameter, "k must be at least 1, got " + std::to_string(k));
}

void require_nice_ground(int m)
{
    if (m < 0)
        throw Error(ErrorKind::parameter, "ground size must be non-negative");
    if (m > kMaxNiceGround)
        throw Error(ErrorKind::capacity, "exhaustive nice-family search is limited to m <= " +
                                             std::to_string(kMaxNiceGround) + ", got " + std::to_string(m));
}

Family to_family(int m, std::vector<Bits> members)
{
    std::sort(members.begin(), members.end());
    return Family(m, std::move(members));
}

int max_antichain(const std::vector<Bits>& elements, std::vector<Bits>& best_set, std::uint64_t& nodes)
{
    // comparable[i]: indices comparable with element i (other than itself)
    const std::size_t n = elements.size();
    std::vector<std::uint64_t> comparable(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && (is_subset(elements[i], elements[j]) || is_subset(elements[j], elements[i])))
                comparable[i] |= std::uint64_t{1} << j;

    int best = 0;
    std::uint64_t best_mask = 0;
    std::function<void(std::uint64_t, std::uint64_t)> go = [&](std::uint64_t chosen, std::uint64_t open) {
        ++nodes;
        const int size = std::popcount(chosen);
        if (size > best) {
            best = size;
            best_mask = chosen;
        }
        while (open != 0) {
            if (size + std::popcount(open) <= best)
                return;
            const int i = std::countr_zero(open);
            open &= open - 1;
            go(chosen | (std::uint64_t{1} << i), open & ~comparable[static_cast<std::size_t>(i)]);
        }
    };
    go(0, n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    best_set.clear();
    for (std::size_t i = 0; i < n; ++i)
        if (((best_mask >> i) & 1) != 0)
            best_set.push_back(elements[i]);
    return best;
}

} // namespace

SearchReport max_nice_size(int m, int k, const SearchOptions& opts)
{
    require_nice_ground(m);
    require_k(k);
    const CellModel model = build_model(CellKind::nice, m, k);
    const EngineResult r = maximize(model, SymmetryGroup::permutations_and_switching, opts);
    SearchReport report;
    report.best = r.best;
    report.example = to_family(m, r.family);
    report.exhausted = r.exhausted;
    report.nodes_visited = r.nodes;
    report.wall_budget = opts.budget;
    return report;
}

ExistsResult exists_nice_of_size(int m, int k, int target, const SearchOptions& opts)
{
    require_nice_ground(m);
    require_k(k);
    const CellModel model = build_model(CellKind::nice, m, k);
    const EngineResult r = reach(model, SymmetryGroup::permutations_and_switching, target, opts);
    ExistsResult out;
    out.nodes_visited = r.nodes;
    if (r.found) {
        out.status = Existence::found;
        out.family = to_family(m, r.family);
    } else {
        out.status = r.exhausted ? Existence::absent : Existence::unknown;
    }
    return out;
}

SearchReport min_m_hyperseparating(int n, int k, int m_max, const SearchOptions& opts)
{
    require_k(k);
    require_nice_ground(m_max);
    if (n < 1 || static_cast<Bits>(n) > (Bits{1} << m_max))
        throw Error(ErrorKind::parameter, "min_m_hyperseparating needs 1 <= n <= 2^m_max");
    SearchReport report;
    report.wall_budget = opts.budget;
    report.found = false;
    report.exhausted = true;
    for (int m = 0; m <= m_max; ++m) {
        if ((Bits{1} << m) < static_cast<Bits>(n)) {
            report.level_exhausted.push_back(true);
            continue;
        }
        ExistsResult r = exists_nice_of_size(m, k, n, opts);
        report.nodes_visited += r.nodes_visited;
        report.level_exhausted.push_back(r.status != Existence::unknown);
        if (r.status == Existence::unknown)
            report.exhausted = false;
        if (r.status == Existence::found) {
            report.found = true;
            report.best = m;
            report.example = dual(*r.family);
            return report;
        }
    }
    return report;
}

SearchReport max_unique_subset_family(int m, int k, const SearchOptions& opts)
{
    require_k(k);
    if (m < 0)
        throw Error(ErrorKind::parameter, "ground size must be non-negative");
    if (m > kMaxUniqueSubsetGround)
        throw Error(ErrorKind::capacity, "unique-subset search is limited to m <= " +
                                             std::to_string(kMaxUniqueSubsetGround));
    const CellModel model = build_model(CellKind::unique_subset, m, k);
    const EngineResult r = maximize(model, SymmetryGroup::permutations, opts);
    SearchReport report;
    report.best = r.best;
    report.example = to_family(m, r.family);
    report.exhausted = r.exhausted;
    report.nodes_visited = r.nodes;
    report.wall_budget = opts.budget;
    return report;
}

SearchReport max_pair_family(int m, int k)
{
    require_k(k);
    if (m < 0)
        throw Error(ErrorKind::parameter, "ground size must be non-negative");
    if (m > kMaxNiceGround || k > 2)
        throw Error(ErrorKind::capacity, "pair-family search is limited to m <= 6 and k <= 2");
    const std::vector<Bits> small = small_subsets(m, k);
    SearchReport report;
    report.exhausted = true;
    // Pairs with different keys never interact, so each key is solved alone.
    for (Bits key : small) {
        std::vector<Bits> supersets;
        for (Bits s : small)
            if (is_subset(key, s))
                supersets.push_back(s);
        std::vector<Bits> antichain;
        report.best += max_antichain(supersets, antichain, report.nodes_visited);
        for (Bits s : antichain)
            report.example_pairs.push_back({s, key});
    }
    report.example = Family(m, {});
    return report;
}

} // namespace sepsys::search
