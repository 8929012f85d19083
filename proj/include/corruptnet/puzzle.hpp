#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace corruptnet {

// The machine-testing game on the complete graph: n machines, exactly t
// truthful, t > n/2 required for solvability. A test is one directed
// inspection (i tests j, one answer); mutual testing costs two tests.
struct PuzzleInstance {
    int n = 0;
    int t = 0;

    bool solvable() const { return t > n - t; }
};

enum class Answer : uint8_t { Truthful, Corrupt };

struct TestRecord {
    int tester = 0;
    int testee = 0;
    Answer answer = Answer::Truthful;
};

using TestHistory = std::vector<TestRecord>;

struct StrategyAction {
    bool is_test = false;
    int tester = 0, testee = 0;       // when is_test
    std::vector<bool> truthful;       // final labeling otherwise
};

// A strategy is a pure decision function of the instance and the history,
// so game-tree verification can replay it along every branch. It must
// terminate within its declared bound.
class Strategy {
public:
    virtual ~Strategy() = default;
    virtual StrategyAction decide(const PuzzleInstance& inst, const TestHistory& history) const = 0;
    virtual long declared_test_bound(int n) const = 0;
    virtual std::string name() const = 0;
};

// Default strategy: elimination pairing. A stack is grown by letting the
// top test each new machine; a Corrupt answer discards the pair (it
// contains at least one corrupt machine), so the surviving stack keeps a
// strict truthful majority and its top is truthful in every consistent
// world. The champion then tests everything it has not already tested.
// At most 2(n-1) tests.
class EliminationStrategy final : public Strategy {
public:
    StrategyAction decide(const PuzzleInstance& inst, const TestHistory& history) const override;
    long declared_test_bound(int n) const override { return 2L * (n - 1); }
    std::string name() const override { return "elimination-pairing"; }
};

// Adversary for concrete runs: owns the ground-truth world and answers
// queries from corrupt testers (truthful testers answer the truth).
class PuzzleAdversary {
public:
    explicit PuzzleAdversary(std::vector<bool> truthful) : truthful_(std::move(truthful)) {}
    virtual ~PuzzleAdversary() = default;

    const std::vector<bool>& truthful() const { return truthful_; }
    virtual Answer corrupt_answer(int tester, int testee, const TestHistory& history) = 0;

private:
    std::vector<bool> truthful_;
};

class RandomPuzzleAdversary final : public PuzzleAdversary {
public:
    RandomPuzzleAdversary(std::vector<bool> truthful, uint64_t seed);
    Answer corrupt_answer(int tester, int testee, const TestHistory& history) override;

private:
    uint64_t seed_;
};

// Always inverts the truth (praises corrupt, accuses truthful); the
// strategy from the impossibility discussion.
class InvertingPuzzleAdversary final : public PuzzleAdversary {
public:
    using PuzzleAdversary::PuzzleAdversary;
    Answer corrupt_answer(int tester, int testee, const TestHistory& history) override;
};

struct PuzzleRun {
    std::vector<bool> truthful; // the strategy's final labeling
    long tests = 0;
};

// Plays strat against adv. Refuses instances with t <= n/2
// (InstanceError::ImpossibleInstance) and validates that the adversary's
// world has exactly t truthful machines.
PuzzleRun run_strategy(const PuzzleInstance& inst, const Strategy& strat, PuzzleAdversary& adv);

// Exhaustive game tree (n <= 6): the adversary may give any answer some
// still-consistent world permits; the strategy wins iff its final labeling
// is correct in every world remaining at that leaf. Worlds have exactly t
// truthful machines.
struct VerifyResult {
    bool ok = false;
    // On failure: a transcript reaching the refuted leaf, and the worlds
    // that remained consistent there.
    TestHistory failing_transcript;
    std::vector<std::vector<bool>> remaining_worlds;
};

VerifyResult verify_strategy_detailed(const PuzzleInstance& inst, const Strategy& strat);
bool verify_strategy(const PuzzleInstance& inst, const Strategy& strat);

// Exact worst-case-optimal number of tests (n <= 5): minimax over tests
// and adversary answers, memoized on the set of consistent worlds.
int minimal_tests(const PuzzleInstance& inst);

} // namespace corruptnet
