#include "corruptnet/puzzle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

#include "corruptnet/errors.hpp"
#include "corruptnet/rng.hpp"

namespace corruptnet {

namespace {

void validate_instance(const PuzzleInstance& inst) {
    if (inst.n < 1 || inst.t < 0 || inst.t > inst.n)
        throw UsageError("puzzle instance needs 1 <= t <= n");
}

void require_solvable(const PuzzleInstance& inst) {
    validate_instance(inst);
    if (!inst.solvable())
        throw InstanceError::impossible(
            "t <= n/2: with at least as many corrupt as truthful machines no machine's type "
            "can be certified (n=" + std::to_string(inst.n) + ", t=" + std::to_string(inst.t) + ")");
}

} // namespace

StrategyAction EliminationStrategy::decide(const PuzzleInstance& inst,
                                           const TestHistory& history) const {
    const int n = inst.n;
    size_t cursor = 0;
    auto replay = [&](int tester, int testee) -> const TestRecord* {
        if (cursor == history.size()) return nullptr;
        const TestRecord& rec = history[cursor];
        if (rec.tester != tester || rec.testee != testee)
            throw UsageError("history does not replay the elimination strategy");
        ++cursor;
        return &rec;
    };

    // Phase 1: grow the vouching stack. A Corrupt answer discards the top
    // together with the new machine; the pair contains at least one
    // corrupt machine in every consistent world, so the surviving stack
    // keeps a strict truthful majority and its top is certainly truthful.
    std::vector<int> stack;
    for (int x = 0; x < n; ++x) {
        if (stack.empty()) {
            stack.push_back(x);
            continue;
        }
        const TestRecord* rec = replay(stack.back(), x);
        if (!rec) {
            StrategyAction test;
            test.is_test = true;
            test.tester = stack.back();
            test.testee = x;
            return test;
        }
        if (rec->answer == Answer::Truthful)
            stack.push_back(x);
        else
            stack.pop_back();
    }
    if (stack.empty())
        throw UsageError("elimination stack emptied; the transcript is inconsistent with a "
                         "truthful majority");
    const int champion = stack.back();

    // Phase 2: the champion vets everyone it has not already answered for.
    std::vector<int> known(n, -1);
    for (size_t i = 0; i < cursor; ++i)
        if (history[i].tester == champion)
            known[history[i].testee] = history[i].answer == Answer::Truthful ? 1 : 0;
    for (int j = 0; j < n; ++j) {
        if (j == champion || known[j] != -1) continue;
        const TestRecord* rec = replay(champion, j);
        if (!rec) {
            StrategyAction test;
            test.is_test = true;
            test.tester = champion;
            test.testee = j;
            return test;
        }
        known[j] = rec->answer == Answer::Truthful ? 1 : 0;
    }

    StrategyAction action;
    action.truthful.assign(n, false);
    action.truthful[champion] = true;
    for (int j = 0; j < n; ++j)
        if (j != champion) action.truthful[j] = known[j] == 1;
    return action;
}

RandomPuzzleAdversary::RandomPuzzleAdversary(std::vector<bool> truthful, uint64_t seed)
    : PuzzleAdversary(std::move(truthful)), seed_(seed) {}

Answer RandomPuzzleAdversary::corrupt_answer(int, int, const TestHistory& history) {
    return (mix_seed(seed_, history.size()) & 1) ? Answer::Truthful : Answer::Corrupt;
}

Answer InvertingPuzzleAdversary::corrupt_answer(int, int testee, const TestHistory&) {
    return truthful()[testee] ? Answer::Corrupt : Answer::Truthful;
}

PuzzleRun run_strategy(const PuzzleInstance& inst, const Strategy& strat, PuzzleAdversary& adv) {
    require_solvable(inst);
    const auto& world = adv.truthful();
    if (static_cast<int>(world.size()) != inst.n ||
        std::count(world.begin(), world.end(), true) != inst.t)
        throw UsageError("adversary world does not match the instance");

    const long bound = strat.declared_test_bound(inst.n);
    TestHistory history;
    while (true) {
        const StrategyAction action = strat.decide(inst, history);
        if (!action.is_test) {
            if (static_cast<int>(action.truthful.size()) != inst.n)
                throw UsageError("strategy labeling has the wrong size");
            return {action.truthful, static_cast<long>(history.size())};
        }
        if (static_cast<long>(history.size()) >= bound)
            throw UsageError("strategy exceeded its declared test bound");
        if (action.tester == action.testee || action.tester < 0 || action.tester >= inst.n ||
            action.testee < 0 || action.testee >= inst.n)
            throw UsageError("invalid test query");
        Answer answer;
        if (world[action.tester])
            answer = world[action.testee] ? Answer::Truthful : Answer::Corrupt;
        else
            answer = adv.corrupt_answer(action.tester, action.testee, history);
        history.push_back({action.tester, action.testee, answer});
    }
}

namespace {

std::vector<uint32_t> all_worlds(int n, int t) {
    std::vector<uint32_t> worlds;
    const uint32_t full = n >= 32 ? 0xffffffffu : (1u << n) - 1;
    for (uint32_t mask = 0;; ++mask) {
        if (std::popcount(mask) == t) worlds.push_back(mask);
        if (mask == full) break;
    }
    return worlds;
}

// World w permits answer a to test (i, j) iff i is corrupt in w (free to
// lie) or j's type matches a.
bool permits(uint32_t world, int tester, int testee, Answer a) {
    if (!(world >> tester & 1)) return true;
    const bool is_truthful = world >> testee & 1;
    return (a == Answer::Truthful) == is_truthful;
}

struct GameVerifier {
    const PuzzleInstance inst;
    const Strategy& strat;
    long bound;

    VerifyResult fail(TestHistory history, const std::vector<uint32_t>& worlds) const {
        VerifyResult r;
        r.ok = false;
        r.failing_transcript = std::move(history);
        for (uint32_t w : worlds) {
            std::vector<bool> truthful(inst.n);
            for (int v = 0; v < inst.n; ++v) truthful[v] = w >> v & 1;
            r.remaining_worlds.push_back(std::move(truthful));
        }
        return r;
    }

    VerifyResult walk(TestHistory& history, const std::vector<uint32_t>& worlds) {
        StrategyAction action;
        try {
            action = strat.decide(inst, history);
        } catch (const std::exception&) {
            // a strategy that cannot continue has lost this branch
            return fail(history, worlds);
        }
        if (!action.is_test) {
            if (static_cast<int>(action.truthful.size()) != inst.n)
                return fail(history, worlds);
            uint32_t mask = 0;
            for (int v = 0; v < inst.n; ++v)
                if (action.truthful[v]) mask |= 1u << v;
            for (uint32_t w : worlds)
                if (w != mask) return fail(history, worlds);
            VerifyResult ok;
            ok.ok = true;
            return ok;
        }
        if (static_cast<long>(history.size()) >= bound) return fail(history, worlds);
        if (action.tester == action.testee || action.tester < 0 || action.tester >= inst.n ||
            action.testee < 0 || action.testee >= inst.n)
            return fail(history, worlds);
        for (const Answer a : {Answer::Truthful, Answer::Corrupt}) {
            std::vector<uint32_t> next;
            for (uint32_t w : worlds)
                if (permits(w, action.tester, action.testee, a)) next.push_back(w);
            if (next.empty()) continue; // no consistent world realizes this answer
            history.push_back({action.tester, action.testee, a});
            VerifyResult r = walk(history, next);
            if (!r.ok) return r;
            history.pop_back();
        }
        VerifyResult ok;
        ok.ok = true;
        return ok;
    }
};

} // namespace

VerifyResult verify_strategy_detailed(const PuzzleInstance& inst, const Strategy& strat) {
    validate_instance(inst);
    if (inst.n > 6)
        throw UsageError("verify_strategy explores the full game tree; n <= 6 required");
    GameVerifier verifier{inst, strat, strat.declared_test_bound(inst.n)};
    TestHistory history;
    return verifier.walk(history, all_worlds(inst.n, inst.t));
}

bool verify_strategy(const PuzzleInstance& inst, const Strategy& strat) {
    return verify_strategy_detailed(inst, strat).ok;
}

namespace {

struct MinimaxSolver {
    int n;
    std::map<std::vector<uint32_t>, int> memo;

    int solve(const std::vector<uint32_t>& worlds) {
        if (worlds.size() <= 1) return 0;
        const auto it = memo.find(worlds);
        if (it != memo.end()) return it->second;
        int best = -1;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                std::vector<uint32_t> if_truthful, if_corrupt;
                for (uint32_t w : worlds) {
                    if (permits(w, i, j, Answer::Truthful)) if_truthful.push_back(w);
                    if (permits(w, i, j, Answer::Corrupt)) if_corrupt.push_back(w);
                }
                // A branch the adversary can hold at the full world set
                // makes the test pure waste; require strict progress.
                if (if_truthful.size() == worlds.size() || if_corrupt.size() == worlds.size())
                    continue;
                int worst = 0;
                if (!if_truthful.empty()) worst = std::max(worst, solve(if_truthful));
                if (!if_corrupt.empty()) worst = std::max(worst, solve(if_corrupt));
                if (best == -1 || 1 + worst < best) best = 1 + worst;
            }
        }
        // An informative test always exists while distinct majority worlds
        // remain, so best is set.
        memo[worlds] = best;
        return best;
    }
};

} // namespace

int minimal_tests(const PuzzleInstance& inst) {
    require_solvable(inst);
    if (inst.n > 5)
        throw UsageError("minimal_tests runs an exact minimax; n <= 5 required");
    MinimaxSolver solver{inst.n, {}};
    return solver.solve(all_worlds(inst.n, inst.t));
}

} // namespace corruptnet
