#include <doctest.h>

#include <numeric>

#include "support.hpp"

using namespace prfp;
using namespace prfp::test;

namespace {

bool is_permutation_of_n(const std::vector<std::size_t> &s, std::size_t n)
{
    std::vector<std::size_t> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != i)
            return false;
    return sorted.size() == n;
}

Design clb_regions(std::vector<int> clbs)
{
    Design d;
    for (std::size_t i = 0; i < clbs.size(); ++i)
        d.regions.push_back({std::string(1, char('p' + i)), {{"m", {clbs[i], 0, 0}}}});
    return d;
}

Design generated(int regions, std::uint64_t seed, const Fabric &f)
{
    GenOptions o;
    o.regions = regions;
    o.seed = seed;
    o.clb = {2, 12};
    o.bram = {0, 2};
    o.dsp = {0, 1};
    o.scarce_prob = 0.3;
    return generate_design(o, f);
}

// Minimum-cost white space and corner growth, computed from the oracles.
std::optional<Rect> single_type4_oracle(const Fabric &f, const ResourceVector &req)
{
    OccupancyState st(f);
    const auto mers = mer_oracle(free_map(f, {}), 0, f.num_columns() - 1, 0, f.grid_height() - 1);
    const Point c{f.num_columns() / 2.0, f.grid_height() / 2.0};
    std::vector<WhiteSpace> ws;
    for (const Rect &r : mers) {
        const ResourceVector free = capacity(f, r);
        const Point m = r.center();
        const double dist = std::hypot(m.x - c.x, m.y - c.y) / (f.num_columns() + f.grid_height());
        ws.push_back({r, free, 27.0 * free.dsp + 9.0 * free.bram + 3.0 * free.clb + dist});
    }
    std::sort(ws.begin(), ws.end(), [](const WhiteSpace &a, const WhiteSpace &b) {
        return std::tie(a.cost, a.rect) < std::tie(b.cost, b.rect);
    });
    return scheme3_oracle(st, req, ws, c);
}

AnnealParams quick_params(std::uint64_t seed)
{
    AnnealParams p;
    p.seed = seed;
    p.max_moves_per_temp = 100;
    return p;
}

} // namespace

TEST_CASE("move 1 swaps a pair in both sequences")
{
    SequencePair sp{{0, 1}, {0, 1}, {0, 0}};
    apply_swap(sp, 0, 1);
    CHECK(sp.seq_a == std::vector<std::size_t>{1, 0});
    CHECK(sp.seq_b == std::vector<std::size_t>{1, 0});
}

TEST_CASE("move 2 removes a region and appends it to both sequences")
{
    // a=0, b=1, c=2
    SequencePair sp{{0, 1, 2}, {2, 1, 0}, {0, 0, 0}};
    apply_remove_replace(sp, 1);
    CHECK(sp.seq_a == std::vector<std::size_t>{0, 2, 1});
    CHECK(sp.seq_b == std::vector<std::size_t>{2, 0, 1});
}

TEST_CASE("move 0 replays identically for a fixed seed")
{
    SequencePair a{{0, 1, 2, 3, 4, 5}, {0, 1, 2, 3, 4, 5}, std::vector<int>(6, 0)};
    SequencePair b = a;
    Rng r1(99), r2(99);
    apply_shuffle(a, r1);
    apply_shuffle(b, r2);
    CHECK(a == b);
    CHECK(a.is_valid(6));
}

TEST_CASE("move 3 shifts within the offset limit")
{
    SequencePair sp{{0}, {0}, {0}};
    apply_shift(sp, 0, 3, 4);
    CHECK(sp.offsets[0] == 3);
    apply_shift(sp, 0, 3, 4);
    CHECK(sp.offsets[0] == 4);
    apply_shift(sp, 0, -9, 4);
    CHECK(sp.offsets[0] == -4);
}

TEST_CASE("move mix")
{
    const MoveConfig cfg;
    auto hot = move_mix(5, 1.0, cfg);
    CHECK(hot[0] == doctest::Approx(0.4));
    CHECK(hot[1] == doctest::Approx(0.2));
    CHECK(std::accumulate(hot.begin(), hot.end(), 0.0) == doctest::Approx(1.0));
    auto cold = move_mix(5, 0.0, cfg);
    CHECK(cold[0] == 0.0);
    CHECK(cold[3] == doctest::Approx(1.0 / 3.0));
    CHECK(move_mix(5, 0.5, cfg)[0] > move_mix(5, 0.1, cfg)[0]);
    CHECK(move_mix(1, 1.0, cfg) == std::vector<double>{0, 0, 0, 1});
}

TEST_CASE("moves keep both sequences permutations")
{
    Gen g(71);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = g.uniform(0, 9);
        SequencePair sp = random_sp(g, n, 0);
        Rng rng(i);
        MoveConfig cfg;
        cfg.offset_limit = 6;
        for (int k = 0; k < 50; ++k) {
            auto [kind, next] = propose_move(sp, rng, g.real(0, 1), cfg);
            REQUIRE(next.is_valid(n));
            CHECK(is_permutation_of_n(next.seq_a, n));
            CHECK(is_permutation_of_n(next.seq_b, n));
            for (int o : next.offsets)
                CHECK(std::abs(o) <= 6);
            if (n == 1)
                CHECK(kind == MoveKind::Shift);
            sp = next;
        }
    }
}

TEST_CASE("sequence pair from non-overlapping rects reproduces their relations")
{
    Gen g(72);
    for (int i = 0; i < 200; ++i) {
        const Fabric f = random_fabric(g, 12, 12, false);
        OccupancyState st(f);
        claim_random(g, st, 10);
        std::vector<Rect> rects;
        for (const Placement &p : st.placements())
            rects.push_back(p.rect);
        const SequencePair sp = sequence_pair_from(rects);
        REQUIRE(sp.is_valid(rects.size()));
        for (std::size_t p = 0; p < rects.size(); ++p)
            for (std::size_t q = p + 1; q < rects.size(); ++q)
                CHECK(relation_holds(sp, p, q, rects[p], rects[q]));
    }
    CHECK_THROWS_AS(sequence_pair_from({{0, 0, 2, 2}, {1, 1, 3, 3}}), std::invalid_argument);
}

TEST_CASE("realizing a one-region design equals its initial allocation")
{
    const Fabric f = user10x23();
    for (const ResourceVector &req : {ResourceVector{4, 0, 0}, ResourceVector{6, 1, 1}, ResourceVector{3, 2, 0}}) {
        Design d;
        d.regions.push_back({"solo", {{"m", req}}});
        const Floorplan init = initial_floorplan(d, f, {});
        const Realization r = realize({{0}, {0}, {0}}, d, f, {});
        REQUIRE(r.ok);
        CHECK(r.placements == init.placements);
    }
}

TEST_CASE("sequence pair relations on two CLB regions")
{
    const Fabric f = user10x23();
    const Design d = clb_regions({4, 4});
    const Realization left = realize({{0, 1}, {0, 1}, {0, 0}}, d, f, {});
    REQUIRE(left.ok);
    CHECK(left.placements[0].rect.x2 < left.placements[1].rect.x1);

    const Realization above = realize({{0, 1}, {1, 0}, {0, 0}}, d, f, {});
    REQUIRE(above.ok);
    CHECK(above.placements[0].rect.y1 > above.placements[1].rect.y2);
}

TEST_CASE("a single CLB region lands in the cheapest white space")
{
    const Fabric f = user10x23();
    const Design d = clb_regions({4});
    const Floorplan fp = initial_floorplan(d, f, {});
    REQUIRE(fp.placements.size() == 1);
    const auto want = single_type4_oracle(f, {4, 0, 0});
    REQUIRE(want);
    CHECK(fp.placements[0].rect == *want);
    for (int x = want->x1; x <= want->x2; ++x)
        CHECK(f.column_kind(x) == ColumnKind::CLB);
}

TEST_CASE("initial floorplan edge cases")
{
    const Fabric f = user10x23();
    const Floorplan empty = initial_floorplan(Design{}, f, {});
    CHECK(empty.placements.empty());
    CHECK(empty.cost.total == 0.0);

    Design too_many = clb_regions({4});
    too_many.regions[0].instances[0].demand.dsp = 11;
    try {
        initial_floorplan(too_many, f, {});
        FAIL("expected InfeasibleError");
    } catch (const InfeasibleError &e) {
        CHECK(std::string(e.what()).find("DSP") != std::string::npos);
    }
}

TEST_CASE("filter fixture's initial floorplan is legal")
{
    const Fabric f = load_device("virtex5_scale");
    const Design d = load_design("filter7");
    const Floorplan fp = initial_floorplan(d, f, {});
    CHECK(fp.placements.size() == 7);
    CHECK(validate_plan(parse_plan(emit_constraints(fp, f, d.name)), d, f).empty());
}

TEST_CASE("the initial sequence pair decodes back to the initial floorplan")
{
    const Fabric f = user10x23();
    for (std::uint64_t s = 1; s <= 10; ++s) {
        const Design d = generated(8, s, f);
        const Floorplan init = initial_floorplan(d, f, {});
        std::vector<Rect> rects;
        for (const Placement &p : init.placements)
            rects.push_back(p.rect);
        const Realization r = realize(sequence_pair_from(rects), d, f, {}, init.placements);
        REQUIRE(r.ok);
        CHECK(r.placements == init.placements);
    }
}

TEST_CASE("incremental realization equals a full decode")
{
    const Fabric f = user10x23();
    const Design d = generated(7, 5, f);
    const Floorplan init = initial_floorplan(d, f, {});
    const Realizer realizer(d, f, {}, init.placements);
    Gen g(73);
    Rng rng(73);
    SequencePair sp = random_sp(g, d.regions.size(), 0);
    Realization base = realizer.run(sp);
    for (int i = 0; i < 300; ++i) {
        const auto [kind, next] = propose_move(sp, rng, g.real(0, 1));
        const Realization full = realizer.run(next);
        const Realization inc = realizer.run_incremental(next, sp, base);
        REQUIRE(full.ok == inc.ok);
        CHECK(full.failed_region == inc.failed_region);
        CHECK(full.placed_in_order == inc.placed_in_order);
        if (full.ok) {
            CHECK(full.placements == inc.placements);
            sp = next;
            base = full;
        }
    }
}

TEST_CASE("annealing with zero moves per level returns the initial floorplan")
{
    const Fabric f = user10x23();
    const Design d = load_design("small4");
    AnnealParams p;
    p.moves_per_temp = 0;
    const AnnealResult r = anneal(d, f, p);
    CHECK(r.best.placements == r.initial.placements);
    CHECK(r.best.cost == r.initial.cost);
}

TEST_CASE("annealing is deterministic and never worse than its start")
{
    const Fabric f = user10x23();
    const Design d = generated(6, 3, f);
    const AnnealResult a = anneal(d, f, quick_params(5));
    const AnnealResult b = anneal(d, f, quick_params(5));
    CHECK(a.best.placements == b.best.placements);
    CHECK(a.best.cost == b.best.cost);
    CHECK(a.best_trajectory == b.best_trajectory);
    CHECK(a.best.cost.total <= a.initial.cost.total);
    for (std::size_t i = 1; i < a.best_trajectory.size(); ++i)
        CHECK(a.best_trajectory[i] <= a.best_trajectory[i - 1]);
    CHECK(validate_plan(parse_plan(emit_constraints(a.best, f, d.name)), d, f).empty());
}

TEST_CASE("multistart keeps the cheapest seed")
{
    const Fabric f = user10x23();
    const Design d = generated(5, 9, f);
    const AnnealResult multi = anneal_multistart(d, f, quick_params(10), 3);
    double best = std::numeric_limits<double>::infinity();
    std::uint64_t best_seed = 0;
    for (std::uint64_t s = 10; s < 13; ++s) {
        const AnnealResult r = anneal(d, f, quick_params(s));
        if (r.best.cost.total < best) {
            best = r.best.cost.total;
            best_seed = s;
        }
    }
    CHECK(multi.best.cost.total == best);
    CHECK(multi.best.seed == best_seed);
}

TEST_CASE("t0 calibration hits the target acceptance")
{
    const std::vector<double> deltas{0.01, 0.05, 0.2, 0.02, 0.5};
    const double t0 = calibrate_t0(deltas, 0.8);
    double mean = 0.0;
    for (double d : deltas)
        mean += std::exp(-d / t0);
    CHECK(mean / deltas.size() == doctest::Approx(0.8).epsilon(1e-6));
    CHECK(calibrate_t0({}, 0.8) == 1e-3);
}

TEST_CASE("annealing parameter files")
{
    const AnnealParams p = parse_anneal_params("# tuning\ncooling 0.9\nseed 7\nweights 1 0 0\nws_weights 8 4 2 1\n");
    CHECK(p.cooling == 0.9);
    CHECK(p.seed == 7);
    CHECK(p.weights.alpha == 1.0);
    CHECK(p.weights.beta == 0.0);
    CHECK(p.ws_weights.alpha == 8.0);
    CHECK(p.max_moves_per_temp == 400);
    CHECK_THROWS_AS(parse_anneal_params("temperature 3\n"), ParseError);
    CHECK_THROWS_AS(parse_anneal_params("cooling x\n"), ParseError);

    AnnealParams bad;
    bad.cooling = 1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    AnnealParams dflt;
    CHECK(dflt.effective_moves_per_temp(3) == 90);
    CHECK(dflt.effective_moves_per_temp(8) == 400);
}
