#include "prfp/anneal.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <stdexcept>

#include "prfp/errors.hpp"
#include "text_util.hpp"

namespace prfp {

bool SequencePair::is_valid(std::size_t regions) const
{
    if (seq_a.size() != regions || seq_b.size() != regions || offsets.size() != regions)
        return false;
    std::vector<std::uint8_t> in_a(regions, 0), in_b(regions, 0);
    for (std::size_t i = 0; i < regions; ++i) {
        if (seq_a[i] >= regions || seq_b[i] >= regions || in_a[seq_a[i]] || in_b[seq_b[i]])
            return false;
        in_a[seq_a[i]] = in_b[seq_b[i]] = 1;
    }
    return true;
}

SequencePair sequence_pair_from(const std::vector<Rect> &rects)
{
    const std::size_t n = rects.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (overlaps(rects[i], rects[j]))
                throw std::invalid_argument("sequence pair of overlapping rects");

    auto left = [&](std::size_t m, std::size_t r) { return rects[m].x2 < rects[r].x1; };
    auto above = [&](std::size_t m, std::size_t r) { return rects[m].y1 > rects[r].y2; };
    auto below = [&](std::size_t m, std::size_t r) { return rects[m].y2 < rects[r].y1; };

    // Repeatedly take the first remaining rect that is left of or above
    // (seq_a), respectively left of or below (seq_b), every other remaining one.
    auto build = [&](auto &&vertical) {
        std::vector<std::size_t> seq;
        std::vector<std::uint8_t> done(n, 0);
        while (seq.size() < n) {
            std::size_t pick = n;
            for (std::size_t m = 0; m < n && pick == n; ++m) {
                if (done[m])
                    continue;
                bool ok = true;
                for (std::size_t r = 0; r < n && ok; ++r)
                    if (r != m && !done[r])
                        ok = left(m, r) || vertical(m, r);
                if (ok)
                    pick = m;
            }
            if (pick == n)
                throw std::logic_error("sequence pair construction stalled");
            done[pick] = 1;
            seq.push_back(pick);
        }
        return seq;
    };
    return {build(above), build(below), std::vector<int>(n, 0)};
}

void apply_shuffle(SequencePair &sp, Rng &rng)
{
    rng.shuffle(sp.seq_a);
    rng.shuffle(sp.seq_b);
}

void apply_swap(SequencePair &sp, std::size_t region_u, std::size_t region_v)
{
    for (auto *seq : {&sp.seq_a, &sp.seq_b}) {
        auto u = std::find(seq->begin(), seq->end(), region_u);
        auto v = std::find(seq->begin(), seq->end(), region_v);
        if (u == seq->end() || v == seq->end())
            throw std::invalid_argument("swap of a region missing from the sequence pair");
        std::iter_swap(u, v);
    }
}

void apply_remove_replace(SequencePair &sp, std::size_t region)
{
    for (auto *seq : {&sp.seq_a, &sp.seq_b}) {
        auto it = std::find(seq->begin(), seq->end(), region);
        if (it == seq->end())
            throw std::invalid_argument("region missing from the sequence pair");
        std::rotate(it, it + 1, seq->end());
    }
}

void apply_shift(SequencePair &sp, std::size_t region, int delta, int offset_limit)
{
    int &o = sp.offsets.at(region);
    o = std::clamp(o + delta, -offset_limit, offset_limit);
}

std::vector<double> move_mix(std::size_t regions, double temp_ratio, const MoveConfig &cfg)
{
    if (regions == 0)
        return {0.0, 0.0, 0.0, 0.0};
    if (regions == 1)
        return {0.0, 0.0, 0.0, 1.0};
    const double shuffle = cfg.shuffle_max * std::clamp(temp_ratio, 0.0, 1.0);
    const double rest = (1.0 - shuffle) / 3.0;
    return {shuffle, rest, rest, rest};
}

std::pair<MoveKind, SequencePair> propose_move(const SequencePair &sp, Rng &rng, double temp_ratio,
                                               const MoveConfig &cfg)
{
    const std::size_t n = sp.seq_a.size();
    SequencePair out = sp;
    if (n == 0)
        return {MoveKind::Shift, out};

    const std::vector<double> mix = move_mix(n, temp_ratio, cfg);
    MoveKind kind = MoveKind::Shift;
    if (n > 1) {
        const double u = rng.uniform01();
        double acc = 0.0;
        for (int k = 0; k < 3; ++k) {
            acc += mix[k];
            if (u < acc) {
                kind = static_cast<MoveKind>(k);
                break;
            }
        }
    }

    switch (kind) {
    case MoveKind::Shuffle:
        apply_shuffle(out, rng);
        break;
    case MoveKind::Swap: {
        const std::size_t u = rng.below(n);
        std::size_t v = rng.below(n - 1);
        if (v >= u)
            ++v;
        apply_swap(out, u, v);
        break;
    }
    case MoveKind::RemoveReplace:
        apply_remove_replace(out, rng.below(n));
        break;
    case MoveKind::Shift: {
        const std::size_t r = rng.below(n);
        const int k = static_cast<int>(rng.uniform_int(1, cfg.max_shift));
        apply_shift(out, r, rng.below(2) ? k : -k, cfg.offset_limit);
        break;
    }
    }
    return {kind, out};
}

std::optional<Placement> place_region(const OccupancyState &state, const std::string &name,
                                      const ResourceVector &req, RegionType type, const FrameWindow &window,
                                      const WsWeights &ws_weights)
{
    if (window.empty())
        return std::nullopt;
    switch (type) {
    case RegionType::Type1:
        return allocate_scheme1(state, name, req, window);
    case RegionType::Type2:
    case RegionType::Type3:
        return allocate_scheme2(state, name, req, window);
    case RegionType::Type4:
        break;
    }
    const Fabric &f = state.fabric();
    const Point c = state.placements().empty()
                            ? Point{f.num_columns() / 2.0, f.grid_height() / 2.0}
                            : centroid(state.placements());
    std::vector<WhiteSpace> ws = detect_whitespace(state, window);
    score_whitespace(ws, f, c, ws_weights);
    return allocate_scheme3(state, name, req, ws, c);
}

namespace {

std::string no_room_message(const std::string &region, const ResourceVector &req)
{
    std::ostringstream ss;
    ss << "region '" << region << "' cannot be placed: no free frame-aligned rectangle holds " << req;
    return ss.str();
}

std::vector<Placement> by_region(const std::vector<Placement> &placed, const Design &design)
{
    std::vector<Placement> out(design.regions.size());
    for (const Placement &p : placed)
        out[*design.region_index(p.region)] = p;
    return out;
}

} // namespace

Floorplan initial_floorplan(const Design &design, const Fabric &fabric, const WsWeights &ws_weights,
                            const CostWeights &weights)
{
    const CapacityVerdict verdict = check_capacity(design, fabric);
    if (!verdict.feasible)
        throw InfeasibleError(verdict.message());

    OccupancyState state(fabric);
    for (const SortedRegion &r : medal_sort(design)) {
        auto p = place_region(state, r.name, r.requirement, r.type, full_window(fabric), ws_weights);
        if (!p)
            throw InfeasibleError(no_room_message(r.name, r.requirement));
        state.claim(std::move(*p));
    }
    Floorplan fp;
    fp.placements = by_region(state.placements(), design);
    fp.cost = total_cost(cost_terms(design, fabric, fp.placements), weights);
    return fp;
}

Realizer::Realizer(const Design &design, const Fabric &fabric, WsWeights ws_weights, std::vector<Placement> reference)
        : design_(&design), fabric_(&fabric), ws_weights_(ws_weights), reference_(std::move(reference))
{
    if (!reference_.empty() && reference_.size() != design.regions.size())
        throw std::invalid_argument("reference floorplan needs one placement per region");
    for (const Region &r : design.regions) {
        req_.push_back(region_requirement(r));
        type_.push_back(classify(req_.back()));
    }
}

Realization Realizer::run(const SequencePair &sp) const
{
    if (!sp.is_valid(design_->regions.size()))
        throw std::invalid_argument("sequence pair does not permute the design's regions");
    return decode(sp, 0, nullptr);
}

Realization Realizer::run_incremental(const SequencePair &sp, const SequencePair &base_sp, const Realization &base) const
{
    const std::size_t n = design_->regions.size();
    if (!sp.is_valid(n) || !base_sp.is_valid(n))
        throw std::invalid_argument("sequence pair does not permute the design's regions");

    std::vector<std::size_t> pos_a(n), base_pos_a(n);
    for (std::size_t i = 0; i < n; ++i) {
        pos_a[sp.seq_a[i]] = i;
        base_pos_a[base_sp.seq_a[i]] = i;
    }
    // Placement k depends only on seq_b[0..k], the seq_a order among those
    // regions and their offsets.
    std::size_t reuse = 0;
    while (reuse < base.placed_in_order.size()) {
        const std::size_t q = sp.seq_b[reuse];
        if (base_sp.seq_b[reuse] != q || base_sp.offsets[q] != sp.offsets[q])
            break;
        bool same = true;
        for (std::size_t j = 0; j < reuse && same; ++j) {
            const std::size_t p = sp.seq_b[j];
            same = (pos_a[p] < pos_a[q]) == (base_pos_a[p] < base_pos_a[q]);
        }
        if (!same)
            break;
        ++reuse;
    }
    if (reuse == n)
        return base;
    return decode(sp, reuse, &base);
}

Realization Realizer::decode(const SequencePair &sp, std::size_t reuse, const Realization *base) const
{
    const std::size_t n = design_->regions.size();
    std::vector<std::size_t> pos_a(n);
    for (std::size_t i = 0; i < n; ++i)
        pos_a[sp.seq_a[i]] = i;

    Realization out;
    OccupancyState state(*fabric_);
    for (std::size_t k = 0; k < reuse; ++k)
        state.claim(base->placed_in_order[k]);

    const int h = fabric_->row_height();
    for (std::size_t k = reuse; k < n; ++k) {
        const std::size_t q = sp.seq_b[k];
        FrameWindow w = full_window(*fabric_);
        for (std::size_t j = 0; j < k; ++j) {
            const Rect &p = state.placements()[j].rect;
            if (pos_a[sp.seq_b[j]] < pos_a[q])
                w.x1 = std::max(w.x1, p.x2 + 1);
            else
                w.row1 = std::max(w.row1, (p.y2 + 1) / h);
        }
        const std::string &name = design_->regions[q].name;
        std::optional<Placement> p;
        if (!reference_.empty()) {
            const Placement &ref = reference_[q];
            const int r1 = ref.rect.y1 / h, r2 = (ref.rect.y2 + 1) / h - 1;
            if (ref.rect.x1 >= w.x1 && ref.rect.x2 <= w.x2 && r1 >= w.row1 && r2 <= w.row2 &&
                state.span_available(ref.rect.x1, ref.rect.x2, r1, r2))
                p = ref;
        }
        if (!p)
            p = place_region(state, name, req_[q], type_[q], w, ws_weights_);
        if (p && sp.offsets[q] != 0) {
            const int hint = sp.offsets[q];
            FrameWindow shifted = w;
            if (hint > 0)
                shifted.x1 = std::max(w.x1, p->rect.x1 + hint);
            else
                shifted.x2 = std::min(w.x2, p->rect.x2 + hint);
            p = place_region(state, name, req_[q], type_[q], shifted, ws_weights_);
        }
        if (!p) {
            out.failed_region = q;
            out.placed_in_order = state.placements();
            return out;
        }
        state.claim(std::move(*p));
    }
    out.ok = true;
    out.placed_in_order = state.placements();
    out.placements = by_region(out.placed_in_order, *design_);
    return out;
}

Realization realize(const SequencePair &sp, const Design &design, const Fabric &fabric, const WsWeights &ws_weights,
                    const std::vector<Placement> &reference)
{
    return Realizer(design, fabric, ws_weights, reference).run(sp);
}

void AnnealParams::validate() const
{
    if (!(cooling > 0.0 && cooling < 1.0))
        throw std::invalid_argument("cooling must lie in (0, 1)");
    if (t0 < 0.0 || !std::isfinite(t0))
        throw std::invalid_argument("t0 must be finite and >= 0");
    if (moves_per_temp < -1 || max_moves_per_temp < 0)
        throw std::invalid_argument("moves per temperature must be >= 0");
    if (!(min_temp_ratio > 0.0 && min_temp_ratio < 1.0))
        throw std::invalid_argument("min_temp_ratio must lie in (0, 1)");
    if (stagnation_levels < 1 || calibration_probes < 0)
        throw std::invalid_argument("stagnation_levels must be >= 1 and calibration_probes >= 0");
    if (!(target_uphill_acceptance > 0.0 && target_uphill_acceptance < 1.0))
        throw std::invalid_argument("target_uphill_acceptance must lie in (0, 1)");
    if (!(moves.shuffle_max >= 0.0 && moves.shuffle_max <= 1.0) || moves.max_shift < 1 || moves.offset_limit < 1)
        throw std::invalid_argument("move settings out of range");
    weights.validate();
    ws_weights.validate();
}

int AnnealParams::effective_moves_per_temp(std::size_t regions) const
{
    if (moves_per_temp >= 0)
        return moves_per_temp;
    const double full = 10.0 * static_cast<double>(regions) * static_cast<double>(regions);
    return static_cast<int>(std::min<double>(full, max_moves_per_temp));
}

double calibrate_t0(const std::vector<double> &uphill, double target)
{
    if (uphill.empty())
        return 1e-3;
    // Mean acceptance grows monotonically with T; bisect in log space.
    auto acceptance = [&](double t) {
        double s = 0.0;
        for (double d : uphill)
            s += std::exp(-d / t);
        return s / static_cast<double>(uphill.size());
    };
    const auto [mn, mx] = std::minmax_element(uphill.begin(), uphill.end());
    double lo = std::log(*mn / 1e3), hi = std::log(*mx * 1e3 / -std::log(target));
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (acceptance(std::exp(mid)) < target)
            lo = mid;
        else
            hi = mid;
    }
    return std::exp(hi);
}

AnnealParams parse_anneal_params(std::string_view text, AnnealParams p)
{
    for (const detail::Line &l : detail::tokenize(text)) {
        const std::string &kw = l.tokens[0];
        auto num = [&](const char *what) {
            detail::expect_arity(l, 2, (kw + " <value>").c_str());
            return detail::parse_double(l.tokens[1], l.number, what);
        };
        auto integer = [&](const char *what) {
            detail::expect_arity(l, 2, (kw + " <value>").c_str());
            return detail::parse_int(l.tokens[1], l.number, what);
        };
        if (kw == "t0")
            p.t0 = num("t0");
        else if (kw == "cooling")
            p.cooling = num("cooling");
        else if (kw == "moves_per_temp")
            p.moves_per_temp = integer("moves_per_temp");
        else if (kw == "max_moves_per_temp")
            p.max_moves_per_temp = integer("max_moves_per_temp");
        else if (kw == "min_temp_ratio")
            p.min_temp_ratio = num("min_temp_ratio");
        else if (kw == "stagnation_levels")
            p.stagnation_levels = integer("stagnation_levels");
        else if (kw == "calibration_probes")
            p.calibration_probes = integer("calibration_probes");
        else if (kw == "target_uphill_acceptance")
            p.target_uphill_acceptance = num("target_uphill_acceptance");
        else if (kw == "shuffle_max")
            p.moves.shuffle_max = num("shuffle_max");
        else if (kw == "max_shift")
            p.moves.max_shift = integer("max_shift");
        else if (kw == "seed") {
            detail::expect_arity(l, 2, "seed <value>");
            p.seed = static_cast<std::uint64_t>(detail::parse_long(l.tokens[1], l.number, "seed"));
        } else if (kw == "weights") {
            detail::expect_arity(l, 4, "weights <alpha> <beta> <gamma>");
            p.weights.alpha = detail::parse_double(l.tokens[1], l.number, "alpha");
            p.weights.beta = detail::parse_double(l.tokens[2], l.number, "beta");
            p.weights.gamma = detail::parse_double(l.tokens[3], l.number, "gamma");
        } else if (kw == "ws_weights") {
            detail::expect_arity(l, 5, "ws_weights <alpha> <beta> <gamma> <delta>");
            p.ws_weights.alpha = detail::parse_double(l.tokens[1], l.number, "alpha");
            p.ws_weights.beta = detail::parse_double(l.tokens[2], l.number, "beta");
            p.ws_weights.gamma = detail::parse_double(l.tokens[3], l.number, "gamma");
            p.ws_weights.delta = detail::parse_double(l.tokens[4], l.number, "delta");
        } else {
            throw ParseError(l.number, "unknown parameter '" + kw + "'");
        }
    }
    return p;
}

AnnealResult anneal(const Design &design, const Fabric &fabric, const AnnealParams &params)
{
    params.validate();
    AnnealResult res;
    const Floorplan raw = initial_floorplan(design, fabric, params.ws_weights, params.weights);
    res.weights = self_normalized(params.weights, cost_terms(design, fabric, raw.placements));

    auto evaluate = [&](const std::vector<Placement> &pl) {
        return total_cost(cost_terms(design, fabric, pl), res.weights);
    };

    res.initial = raw;
    res.initial.cost = evaluate(raw.placements);
    res.initial.seed = params.seed;
    res.best = res.initial;

    const std::size_t n = design.regions.size();
    const int per_temp = params.effective_moves_per_temp(n);
    if (n == 0 || per_temp == 0)
        return res;

    std::vector<Rect> rects;
    for (const Placement &p : raw.placements)
        rects.push_back(p.rect);
    SequencePair cur_sp = sequence_pair_from(rects);
    cur_sp.offsets.assign(n, 0);
    MoveConfig moves = params.moves;
    moves.offset_limit = std::min(moves.offset_limit, fabric.num_columns());

    // The initial rects satisfy every relation of cur_sp, so with them as
    // reference the decoder reproduces the initial floorplan.
    const Realizer realizer(design, fabric, params.ws_weights, res.initial.placements);
    Realization cur_real = realizer.run(cur_sp);
    if (!cur_real.ok || cur_real.placements != res.initial.placements)
        throw std::logic_error("initial floorplan does not decode from its own sequence pair");
    Floorplan cur = res.initial;

    Rng rng(params.seed);
    std::size_t iterations = 0;

    double t0 = params.t0;
    if (t0 <= 0.0) {
        std::vector<double> uphill;
        for (int i = 0; i < params.calibration_probes; ++i) {
            auto [kind, cand] = propose_move(cur_sp, rng, 1.0, moves);
            ++iterations;
            Realization r = realizer.run_incremental(cand, cur_sp, cur_real);
            if (!r.ok)
                continue;
            const double d = evaluate(r.placements).total - cur.cost.total;
            if (d > 0)
                uphill.push_back(d);
        }
        t0 = calibrate_t0(uphill, params.target_uphill_acceptance);
    }
    res.t0 = t0;

    double temp = t0;
    int stagnant = 0;
    while (temp >= params.min_temp_ratio * t0 && stagnant < params.stagnation_levels) {
        bool improved = false;
        const double level_start = cur.cost.total;
        for (int m = 0; m < per_temp; ++m) {
            auto [kind, cand] = propose_move(cur_sp, rng, temp / t0, moves);
            ++iterations;
            Realization r = realizer.run_incremental(cand, cur_sp, cur_real);
            if (!r.ok) {
                ++res.infeasible;
                continue;
            }
            const CostBreakdown c = evaluate(r.placements);
            const double delta = c.total - cur.cost.total;
            if (delta > 0 && rng.uniform01() >= std::exp(-delta / temp))
                continue;
            ++res.accepted;
            cur_sp = std::move(cand);
            cur.placements = r.placements;
            cur.cost = c;
            cur_real = std::move(r);
            if (cur.cost.total < res.best.cost.total) {
                res.best.placements = cur.placements;
                res.best.cost = cur.cost;
                improved = true;
            }
        }
        res.best_trajectory.push_back(res.best.cost.total);
        res.current_trajectory.push_back(cur.cost.total);
        // A level is stagnant when the chain is frozen: no new best and the
        // current cost back where it started.
        const bool moved = std::abs(cur.cost.total - level_start) > 1e-12 * std::max(1.0, std::abs(level_start));
        stagnant = improved || moved ? 0 : stagnant + 1;
        temp *= params.cooling;
    }
    res.best.iterations = iterations;
    return res;
}

AnnealResult anneal_multistart(const Design &design, const Fabric &fabric, const AnnealParams &params, int restarts)
{
    if (restarts < 1)
        throw std::invalid_argument("restarts must be >= 1");
    if (restarts == 1)
        return anneal(design, fabric, params);

    std::vector<std::future<AnnealResult>> runs;
    for (int i = 0; i < restarts; ++i) {
        AnnealParams p = params;
        p.seed = params.seed + static_cast<std::uint64_t>(i);
        runs.push_back(std::async(std::launch::async, [&design, &fabric, p] { return anneal(design, fabric, p); }));
    }
    std::optional<AnnealResult> best;
    for (auto &f : runs) {
        AnnealResult r = f.get();
        // Seeds arrive in increasing order, so strict < keeps the lower seed on ties.
        if (!best || r.best.cost.total < best->best.cost.total)
            best = std::move(r);
    }
    return std::move(*best);
}

} // namespace prfp
