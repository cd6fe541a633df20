#include "stablab/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>

#include "stablab/errors.hpp"

namespace stablab {

namespace {

void push_reduced(std::vector<WallLetter>& out, const WallLetter& l) {
    if (!out.empty() && out.back().wall == l.wall && out.back().upper == l.upper &&
        out.back().rightward != l.rightward)
        out.pop_back();
    else
        out.push_back(l);
}

// Crossing word of the standard loop around puncture |g|: run under the
// intermediate punctures, circle the puncture once (below then above for the
// positive letter, above then below for the inverse), run back.
void append_loop_letter(std::vector<WallLetter>& out, int g) {
    int m = std::abs(g);
    for (int j = 1; j < m; ++j) push_reduced(out, {j, false, true});
    if (g > 0) {
        push_reduced(out, {m, false, true});
        push_reduced(out, {m, true, false});
    } else {
        push_reduced(out, {m, true, true});
        push_reduced(out, {m, false, false});
    }
    for (int j = m - 1; j >= 1; --j) push_reduced(out, {j, false, false});
}

std::vector<int> reduce_word(const std::vector<int>& w) {
    std::vector<int> out;
    for (int g : w) {
        if (!out.empty() && out.back() == -g)
            out.pop_back();
        else
            out.push_back(g);
    }
    return out;
}

int loop_letter_of(const WallLetter& l) {
    // An upper-ray crossing determines the class: rightward over puncture m is
    // the inverse of the standard loop, leftward is the loop itself.
    return l.rightward ? -l.wall : l.wall;
}

// Boundary-cycle segment tokens for one strip, listed counterclockwise
// starting at the top-left corner.  Left wall going down, bottom going right,
// right wall going up; the top carries nothing.
constexpr int kTFL = 0;   // top foot of the left wall
constexpr int kUL = 1;    // upper left ray
constexpr int kPL = 2;    // left puncture (arrivals from inside this strip)
constexpr int kLL = 3;    // lower left ray
constexpr int kBFL = 4;   // bottom foot of the left wall
constexpr int kLBT = 5;   // top-left disk corner (leftmost strip only)
constexpr int kLBB = 6;   // bottom-left disk corner
constexpr int kBFR = 7;   // bottom foot of the right wall
constexpr int kLR = 8;    // lower right ray
constexpr int kPR = 9;    // right puncture (arrivals from inside this strip)
constexpr int kUR = 10;   // upper right ray
constexpr int kTFR = 11;  // top foot of the right wall
constexpr int kRBB = 12;  // bottom-right disk corner (rightmost strip only)
constexpr int kRBT = 13;  // top-right disk corner

int base_token(int j) { return 100 + j; }

bool is_ray_token(int t) { return t == kUL || t == kLL || t == kLR || t == kUR; }

// Whether the boundary cycle traverses the ray from its boundary foot toward
// the puncture.
bool toward_puncture(int token) { return token == kUL || token == kLR; }

std::vector<int> strip_token_list(int s, int n, int d) {
    std::vector<int> v;
    if (s >= 1) {
        v.push_back(kTFL);
        v.push_back(kUL);
        v.push_back(kPL);
        v.push_back(kLL);
        v.push_back(kBFL);
    } else {
        v.push_back(kLBT);
        v.push_back(kLBB);
        for (int j = 1; j <= d; ++j) v.push_back(base_token(j));
    }
    if (s <= n - 1) {
        v.push_back(kBFR);
        v.push_back(kLR);
        v.push_back(kPR);
        v.push_back(kUR);
        v.push_back(kTFR);
    } else {
        v.push_back(kRBB);
        v.push_back(kRBT);
    }
    return v;
}

struct CRef {
    int slot = 0;  // index into the routed family
    int idx = 0;   // crossing index along that tether
};

struct ORef {
    int slot = 0;
    int obj = 0;  // 0 = start, 1..M = crossings, M + 1 = end
};

bool interleaved(std::int64_t a1, std::int64_t b1, std::int64_t a2, std::int64_t b2) {
    if (a1 > b1) std::swap(a1, b1);
    bool in1 = a2 > a1 && a2 < b1;
    bool in2 = b2 > a1 && b2 < b1;
    return in1 != in2;
}

// Joint taut routing of a family of tethers.  Orders the crossings along each
// wall ray and the arrivals around each endpoint so that every strip becomes
// a family of chords on its boundary cycle; chord interleavings are then the
// geometric intersections.
class Router {
  public:
    Router(std::vector<const Tether*> arcs, int n, int d)
        : n_(n), d_(d), arcs_(std::move(arcs)) {
        std::size_t total = 0;
        for (auto* a : arcs_) {
            if (a->punctures != n_ || a->basepoints != d_)
                throw malformed_input("tethers live in different disks");
            total += a->crossings.size() + 2;
        }
        depth_limit_ = static_cast<int>(total) + 8;
        sub_space_ = static_cast<std::int64_t>(total) + 3;
        for (int s = 0; s <= n_; ++s) tokens_.push_back(strip_token_list(s, n_, d_));

        chord_strip_.resize(arcs_.size());
        cross_rank_.resize(arcs_.size());
        end_rank_.assign(arcs_.size(), 0);
        start_rank_.assign(arcs_.size(), 0);
        for (std::size_t i = 0; i < arcs_.size(); ++i) {
            const Tether& t = *arcs_[i];
            std::vector<int> strips{0};
            int cur = 0;
            for (const auto& l : t.crossings) {
                cur = l.rightward ? l.wall : l.wall - 1;
                strips.push_back(cur);
            }
            chord_strip_[i] = std::move(strips);
            cross_rank_[i].assign(t.crossings.size(), 0);
        }

        std::map<std::pair<int, bool>, std::vector<CRef>> rays;
        for (std::size_t i = 0; i < arcs_.size(); ++i)
            for (std::size_t k = 0; k < arcs_[i]->crossings.size(); ++k) {
                const auto& l = arcs_[i]->crossings[k];
                rays[{l.wall, l.upper}].push_back({static_cast<int>(i), static_cast<int>(k)});
            }
        for (auto& [key, list] : rays) {
            sort_with(list, [&](const CRef& a, const CRef& b) { return cmp_cross(a, b) < 0; });
            for (std::size_t r = 0; r < list.size(); ++r)
                cross_rank_[list[r].slot][list[r].idx] = static_cast<std::int64_t>(r);
            ray_count_[key] = static_cast<std::int64_t>(list.size());
        }

        std::map<std::pair<int, bool>, std::vector<int>> ends;
        std::map<int, std::vector<int>> starts;
        for (std::size_t i = 0; i < arcs_.size(); ++i) {
            ends[{arcs_[i]->puncture, arcs_[i]->arrive_left}].push_back(static_cast<int>(i));
            starts[arcs_[i]->basepoint].push_back(static_cast<int>(i));
        }
        for (auto& [key, list] : ends) {
            sort_with(list, [&](int a, int b) { return cmp_end(a, b) < 0; });
            for (std::size_t r = 0; r < list.size(); ++r)
                end_rank_[list[r]] = static_cast<std::int64_t>(r);
        }
        for (auto& [key, list] : starts) {
            sort_with(list, [&](int a, int b) { return cmp_start(a, b) < 0; });
            for (std::size_t r = 0; r < list.size(); ++r)
                start_rank_[list[r]] = static_cast<std::int64_t>(r);
        }
    }

    int strips() const { return n_ + 1; }

    int chord_count(int slot) const {
        return static_cast<int>(arcs_[slot]->crossings.size()) + 1;
    }
    int chord_strip(int slot, int k) const { return chord_strip_[slot][k]; }

    std::pair<std::int64_t, std::int64_t> chord_positions(int slot, int k) const {
        int s = chord_strip_[slot][k];
        return {position({slot, k}, s), position({slot, k + 1}, s)};
    }

    std::int64_t cycle_length(int s) const {
        return static_cast<std::int64_t>(tokens_[s].size()) * sub_space_;
    }

    std::int64_t token_position(int s, int token) const {
        return ordinal(s, token) * sub_space_;
    }

    int token_of(const ORef& o, int s) const {
        const Tether& t = *arcs_[o.slot];
        int last = static_cast<int>(t.crossings.size()) + 1;
        if (o.obj == 0) return base_token(t.basepoint);
        if (o.obj == last) return t.arrive_left ? kPR : kPL;
        const auto& l = t.crossings[o.obj - 1];
        if (l.wall == s) return l.upper ? kUL : kLL;
        if (l.wall == s + 1) return l.upper ? kUR : kLR;
        throw internal_error("crossing outside its strip");
    }

    std::int64_t count_between(const std::vector<bool>& in_a,
                               const std::vector<bool>& in_b) const {
        std::int64_t total = 0;
        for (int s = 0; s <= n_; ++s) {
            std::vector<std::pair<std::int64_t, std::int64_t>> ca, cb;
            for (std::size_t i = 0; i < arcs_.size(); ++i) {
                if (!in_a[i] && !in_b[i]) continue;
                for (int k = 0; k < chord_count(static_cast<int>(i)); ++k) {
                    if (chord_strip_[i][k] != s) continue;
                    auto p = chord_positions(static_cast<int>(i), k);
                    if (in_a[i]) ca.push_back(p);
                    if (in_b[i]) cb.push_back(p);
                }
            }
            for (const auto& x : ca)
                for (const auto& y : cb)
                    if (interleaved(x.first, x.second, y.first, y.second)) ++total;
        }
        return total;
    }

    // First crossing of tether 0 with any other family member, walking tether
    // 0 from its marked point: (chord index, distance along the chord, owner
    // slot, owner chord index).
    struct Hit {
        int chord = 0;
        std::int64_t dist = 0;
        int slot = 0;
        int other_chord = 0;
    };
    std::optional<Hit> first_hit() const {
        for (int k = 0; k < chord_count(0); ++k) {
            int s = chord_strip_[0][k];
            auto [e, x] = chord_positions(0, k);
            std::int64_t cyc = cycle_length(s);
            std::int64_t dx = ((x - e) % cyc + cyc) % cyc;
            std::optional<Hit> best;
            for (std::size_t i = 1; i < arcs_.size(); ++i)
                for (int r = 0; r < chord_count(static_cast<int>(i)); ++r) {
                    if (chord_strip_[i][r] != s) continue;
                    auto [u, v] = chord_positions(static_cast<int>(i), r);
                    std::int64_t du = ((u - e) % cyc + cyc) % cyc;
                    std::int64_t dv = ((v - e) % cyc + cyc) % cyc;
                    bool uin = du > 0 && du < dx;
                    bool vin = dv > 0 && dv < dx;
                    if (uin == vin) continue;
                    std::int64_t da = uin ? du : dv;
                    if (!best || da < best->dist)
                        best = Hit{k, da, static_cast<int>(i), r};
                }
            if (best) return best;
        }
        return std::nullopt;
    }

  private:
    template <typename Less>
    static void sort_with(std::vector<CRef>& v, Less less) {
        for (std::size_t i = 1; i < v.size(); ++i)
            for (std::size_t j = i; j > 0 && less(v[j], v[j - 1]); --j)
                std::swap(v[j], v[j - 1]);
    }
    template <typename Less>
    static void sort_with(std::vector<int>& v, Less less) {
        for (std::size_t i = 1; i < v.size(); ++i)
            for (std::size_t j = i; j > 0 && less(v[j], v[j - 1]); --j)
                std::swap(v[j], v[j - 1]);
    }

    int ordinal(int s, int token) const {
        const auto& list = tokens_[s];
        for (std::size_t i = 0; i < list.size(); ++i)
            if (list[i] == token) return static_cast<int>(i);
        throw internal_error("token missing from strip cycle");
    }

    int cyc_dist(int s, int from, int to) const {
        int nseg = static_cast<int>(tokens_[s].size());
        return ((ordinal(s, to) - ordinal(s, from)) % nseg + nseg) % nseg;
    }

    const WallLetter& letter(const CRef& c) const { return arcs_[c.slot]->crossings[c.idx]; }

    // Neighbouring object of a crossing on the given side of its wall.
    ORef neighbor(const CRef& c, int s) const {
        if (chord_strip_[c.slot][c.idx] == s) return {c.slot, c.idx};
        if (chord_strip_[c.slot][c.idx + 1] == s) return {c.slot, c.idx + 2};
        throw internal_error("strip not adjacent to crossing");
    }

    // Order of two crossings along their common ray, looking only at the
    // continuations into strip s.  Returns {-1, steps} when a sits nearer the
    // puncture, {+1, steps} for b, {0, steps} when the strands run into a
    // shared endpoint on this side; steps counts the rays passed before the
    // strands diverge.
    //
    // Chords leaving a boundary segment are nested: an entry later along the
    // segment's traversal exits at a smaller cyclic distance around the strip.
    // Combined with the traversal direction of the ray this pins the order.
    std::pair<int, int> walk(const CRef& a, const CRef& b, int s, int depth) const {
        if (depth > depth_limit_) throw internal_error("routing recursion too deep");
        ORef o1 = neighbor(a, s), o2 = neighbor(b, s);
        const auto& ra = letter(a);
        int rtok = ra.wall == s ? (ra.upper ? kUL : kLL) : (ra.upper ? kUR : kLR);
        int t1 = token_of(o1, s), t2 = token_of(o2, s);
        if (t1 != t2) {
            int d1 = cyc_dist(s, rtok, t1), d2 = cyc_dist(s, rtok, t2);
            bool a_nearer = toward_puncture(rtok) ? d1 < d2 : d1 > d2;
            return {a_nearer ? -1 : 1, depth};
        }
        if (!is_ray_token(t1)) return {0, depth};  // both strands stop at a shared endpoint
        CRef ca{o1.slot, o1.obj - 1}, cb{o2.slot, o2.obj - 1};
        int wall2 = letter(ca).wall;
        int s2 = (t1 == kUR || t1 == kLR) ? wall2 : wall2 - 1;
        auto [r, div] = walk(ca, cb, s2, depth + 1);
        if (r == 0) return {0, div};
        bool o1_nearer = r < 0;
        bool o1_earlier = toward_puncture(t1) ? !o1_nearer : o1_nearer;
        bool a_nearer = toward_puncture(rtok) == o1_earlier;
        return {a_nearer ? -1 : 1, div};
    }

    int cmp_cross(const CRef& a, const CRef& b) const {
        if (a.slot == b.slot && a.idx == b.idx) return 0;
        int w = letter(a).wall;
        auto [r1, d1] = walk(a, b, w, 0);
        auto [r2, d2] = walk(a, b, w - 1, 0);
        if (r1 == 0 && r2 == 0)
            throw internal_error("indistinguishable strands while routing");
        if (r1 == 0) return r2;
        if (r2 == 0) return r1;
        // Strands sharing a corridor of rays cross exactly once when the two
        // ends nest oppositely.  Resolving each ray by its nearer end keeps
        // the swap inside a single strip, so the crossing is counted once.
        return d1 <= d2 ? r1 : r2;
    }

    // Order of two arrivals around a shared endpoint: the chord exiting at the
    // larger cyclic distance hugs the earlier side.
    int cmp_fan(int item_token, int s, const ORef& o1, const ORef& o2) const {
        int t1 = token_of(o1, s), t2 = token_of(o2, s);
        if (t1 != t2) {
            int d1 = cyc_dist(s, item_token, t1), d2 = cyc_dist(s, item_token, t2);
            return d1 > d2 ? -1 : 1;
        }
        if (!is_ray_token(t1))
            throw internal_error("duplicate tether class in routed family");
        CRef ca{o1.slot, o1.obj - 1}, cb{o2.slot, o2.obj - 1};
        int r = cmp_cross(ca, cb);
        bool o1_nearer = r < 0;
        bool o1_earlier = toward_puncture(t1) ? !o1_nearer : o1_nearer;
        return o1_earlier ? 1 : -1;
    }

    int cmp_end(int sa, int sb) const {
        const Tether& a = *arcs_[sa];
        int s = chord_strip_[sa].back();
        int item = a.arrive_left ? kPR : kPL;
        ORef o1{sa, static_cast<int>(a.crossings.size())};
        ORef o2{sb, static_cast<int>(arcs_[sb]->crossings.size())};
        return cmp_fan(item, s, o1, o2);
    }

    int cmp_start(int sa, int sb) const {
        return cmp_fan(base_token(arcs_[sa]->basepoint), 0, ORef{sa, 1}, ORef{sb, 1});
    }

    std::int64_t position(const ORef& o, int s) const {
        const Tether& t = *arcs_[o.slot];
        int last = static_cast<int>(t.crossings.size()) + 1;
        int tok = token_of(o, s);
        std::int64_t sub;
        if (o.obj == 0)
            sub = start_rank_[o.slot];
        else if (o.obj == last)
            sub = end_rank_[o.slot];
        else {
            const auto& l = t.crossings[o.obj - 1];
            std::int64_t cnt = ray_count_.at({l.wall, l.upper});
            std::int64_t r = cross_rank_[o.slot][o.obj - 1];  // 0 = nearest the puncture
            sub = toward_puncture(tok) ? cnt - 1 - r : r;
        }
        return static_cast<std::int64_t>(ordinal(s, tok)) * sub_space_ + sub + 1;
    }

    int n_, d_;
    std::vector<const Tether*> arcs_;
    int depth_limit_ = 0;
    std::int64_t sub_space_ = 0;
    std::vector<std::vector<int>> tokens_;
    std::vector<std::vector<int>> chord_strip_;
    std::vector<std::vector<std::int64_t>> cross_rank_;
    std::vector<std::int64_t> end_rank_, start_rank_;
    std::map<std::pair<int, bool>, std::int64_t> ray_count_;

    friend std::vector<std::int64_t> edge_counts_impl(const Router&, int, int);
    friend bool consistency_impl(const Router&, int, int, const std::vector<std::int64_t>&);
};

}  // namespace

bool Tether::operator<(const Tether& o) const {
    if (puncture != o.puncture) return puncture < o.puncture;
    if (crossings.size() != o.crossings.size()) return crossings.size() < o.crossings.size();
    if (crossings != o.crossings) return crossings < o.crossings;
    if (basepoint != o.basepoint) return basepoint < o.basepoint;
    if (arrive_left != o.arrive_left) return arrive_left < o.arrive_left;
    if (punctures != o.punctures) return punctures < o.punctures;
    return basepoints < o.basepoints;
}

Tether tether_from_loop(int punctures, int basepoints, int basepoint, int puncture,
                        std::vector<int> loop) {
    if (punctures < 1 || basepoints < 1)
        throw malformed_input("disk needs at least one puncture and one marked point");
    if (basepoint < 1 || basepoint > basepoints)
        throw malformed_input("marked point out of range");
    if (puncture < 1 || puncture > punctures)
        throw malformed_input("puncture out of range");
    for (int g : loop)
        if (g == 0 || std::abs(g) > punctures)
            throw malformed_input("loop letter out of range");

    loop = reduce_word(loop);
    while (!loop.empty() && std::abs(loop.back()) == puncture) loop.pop_back();

    std::vector<WallLetter> w;
    for (int g : loop) append_loop_letter(w, g);
    for (int j = 1; j < puncture; ++j) push_reduced(w, {j, false, true});

    bool left = true;
    while (!w.empty() && w.back().wall == puncture) {
        if (!left && w.back().rightward) {
            w.pop_back();
            left = true;
        } else if (left && !w.back().rightward) {
            w.pop_back();
            left = false;
        } else {
            break;
        }
    }

    std::vector<int> extracted;
    for (const auto& l : w)
        if (l.upper) extracted.push_back(loop_letter_of(l));
    extracted = reduce_word(extracted);
    if (extracted != loop) throw internal_error("crossing word disagrees with its loop");

    int strip = 0;
    for (const auto& l : w) {
        if (l.rightward) {
            if (strip != l.wall - 1) throw internal_error("inconsistent crossing word");
            strip = l.wall;
        } else {
            if (strip != l.wall) throw internal_error("inconsistent crossing word");
            strip = l.wall - 1;
        }
    }
    if (strip != puncture - (left ? 1 : 0))
        throw internal_error("tether does not reach its puncture");

    Tether t;
    t.punctures = punctures;
    t.basepoints = basepoints;
    t.basepoint = basepoint;
    t.puncture = puncture;
    t.arrive_left = left;
    t.loop = std::move(loop);
    t.crossings = std::move(w);
    return t;
}

Tether straight_tether(int punctures, int basepoints, int basepoint, int puncture) {
    return tether_from_loop(punctures, basepoints, basepoint, puncture, {});
}

namespace {

// Half-twist substitution on loop letters.  The positive generator carries the
// left puncture under the right one; on loops this sends x_k to x_{k+1} and
// x_{k+1} to the conjugate x_{k+1} x_k x_{k+1}^-1.  The conjugation side is
// pinned by the invariance of the loop around the pair, which reads
// x_{k+1} x_k with the basepoint below and loops combed underneath.
std::vector<int> twist_substitution(const std::vector<int>& w, int k, bool inverse) {
    std::vector<int> out;
    auto emit = [&](int g) {
        if (!out.empty() && out.back() == -g)
            out.pop_back();
        else
            out.push_back(g);
    };
    for (int g : w) {
        int a = std::abs(g);
        if (a != k && a != k + 1) {
            emit(g);
            continue;
        }
        std::vector<int> img;
        if (!inverse)
            img = (a == k) ? std::vector<int>{k + 1} : std::vector<int>{k + 1, k, -(k + 1)};
        else
            img = (a == k) ? std::vector<int>{-k, k + 1, k} : std::vector<int>{k};
        if (g < 0) {
            std::reverse(img.begin(), img.end());
            for (int& x : img) x = -x;
        }
        for (int x : img) emit(x);
    }
    return out;
}

}  // namespace

Tether braid_image(const Tether& t, int signed_generator) {
    int k = std::abs(signed_generator);
    if (signed_generator == 0 || k > t.punctures - 1)
        throw malformed_input("braid generator out of range");
    bool inv = signed_generator < 0;
    std::vector<int> w = twist_substitution(t.loop, k, inv);
    // End corrections mirror the loop substitution: the arc ending on the
    // puncture that rides over the other picks up one wrap of its partner.
    // Conjugating a small loop about the moved endpoint back to the standard
    // generator forces exactly these cosets; any other choice breaks either
    // the braid relations or embeddedness of images of straight tethers.
    int end = t.puncture;
    if (t.puncture == k) {
        end = k + 1;
        if (inv) w.push_back(-k);
    } else if (t.puncture == k + 1) {
        end = k;
        if (!inv) w.push_back(k + 1);
    }
    return tether_from_loop(t.punctures, t.basepoints, t.basepoint, end, std::move(w));
}

std::int64_t tether_intersection(const Tether& a, const Tether& b) {
    if (a.punctures != b.punctures || a.basepoints != b.basepoints)
        throw malformed_input("tethers live in different disks");
    if (a == b) return 0;  // parallel push-off
    Router r({&a, &b}, a.punctures, a.basepoints);
    return r.count_between({true, false}, {false, true});
}

std::int64_t system_intersection(const std::vector<Tether>& a, const std::vector<Tether>& b) {
    std::int64_t total = 0;
    for (const auto& x : a)
        for (const auto& y : b) total += tether_intersection(x, y);
    return total;
}

std::int64_t family_crossing_number(const std::vector<Tether>& arcs) {
    if (arcs.empty()) return 0;
    std::vector<const Tether*> ptrs;
    for (const auto& a : arcs) ptrs.push_back(&a);
    Router r(ptrs, arcs.front().punctures, arcs.front().basepoints);
    std::vector<bool> all(arcs.size(), true);
    return r.count_between(all, all) / 2;
}

std::optional<std::pair<std::int64_t, std::int64_t>>
first_crossing_rank(const Tether& t, const Tether& v) {
    if (t.punctures != v.punctures || t.basepoints != v.basepoints)
        throw malformed_input("tethers live in different disks");
    if (t == v) return std::nullopt;
    Router r({&t, &v}, t.punctures, t.basepoints);
    auto hit = r.first_hit();
    if (!hit) return std::nullopt;
    return std::make_pair(static_cast<std::int64_t>(hit->chord), hit->dist);
}

namespace {

Tether cut_at(const Tether& t, const Tether& v, const Router::Hit& hit) {
    std::vector<int> lp;
    for (int i = 0; i < hit.chord; ++i)
        if (t.crossings[i].upper) lp.push_back(loop_letter_of(t.crossings[i]));
    for (std::size_t i = hit.other_chord; i < v.crossings.size(); ++i)
        if (v.crossings[i].upper) lp.push_back(loop_letter_of(v.crossings[i]));
    return tether_from_loop(t.punctures, t.basepoints, t.basepoint, v.puncture, std::move(lp));
}

}  // namespace

Tether surger_system(const Tether& t, const std::vector<Tether>& family) {
    std::vector<const Tether*> arcs{&t};
    for (const auto& v : family) {
        if (v == t) throw malformed_input("surgery against the tether itself");
        arcs.push_back(&v);
    }
    if (family.empty()) throw malformed_input("surgery needs a nonempty family");
    Router r(arcs, t.punctures, t.basepoints);
    auto hit = r.first_hit();
    if (!hit) throw malformed_input("surgery requires intersecting tethers");
    return cut_at(t, family[hit->slot - 1], *hit);
}

Tether surger_tether(const Tether& t, const Tether& v) { return surger_system(t, {v}); }

std::size_t nearest_crossing_owner(const Tether& t, const std::vector<Tether>& family) {
    std::vector<const Tether*> arcs{&t};
    for (const auto& v : family) {
        if (v == t) throw malformed_input("family contains the tether itself");
        arcs.push_back(&v);
    }
    if (family.empty()) throw malformed_input("empty family");
    Router r(arcs, t.punctures, t.basepoints);
    auto hit = r.first_hit();
    if (!hit) throw malformed_input("family is disjoint from the tether");
    return static_cast<std::size_t>(hit->slot - 1);
}

namespace {

// Edge bookkeeping for the fixed triangulation: routing data alongside the
// public vertex-pair description.
struct EdgeInfo {
    enum Kind { kWallEdge, kChordEdge, kBoundaryEdge } kind = kBoundaryEdge;
    int wall = 0;
    bool upper = false;
    int strip = 0;
    int ta = 0, tb = 0;  // chord edge: tokens of the two endpoints
};

struct DiskModel {
    DiskTriangulation tri;
    std::vector<EdgeInfo> infos;
    // vertex ids
    int p(int k) const { return k - 1; }
    int T(int k) const { return n + k - 1; }
    int B(int k) const { return 2 * n + k - 1; }
    int b(int j) const { return 3 * n + j - 1; }
    int CLt() const { return 3 * n + d; }
    int CLb() const { return 3 * n + d + 1; }
    int CRt() const { return 3 * n + d + 2; }
    int CRb() const { return 3 * n + d + 3; }
    int n = 1, d = 1;
};

DiskModel build_disk_model(int n, int d) {
    if (n < 1 || d < 1)
        throw malformed_input("disk needs at least one puncture and one marked point");
    DiskModel m;
    m.n = n;
    m.d = d;
    auto& tri = m.tri;
    for (int k = 1; k <= n; ++k) tri.vertex_names.push_back("p" + std::to_string(k));
    for (int k = 1; k <= n; ++k) tri.vertex_names.push_back("T" + std::to_string(k));
    for (int k = 1; k <= n; ++k) tri.vertex_names.push_back("B" + std::to_string(k));
    for (int j = 1; j <= d; ++j) tri.vertex_names.push_back("b" + std::to_string(j));
    tri.vertex_names.push_back("CLt");
    tri.vertex_names.push_back("CLb");
    tri.vertex_names.push_back("CRt");
    tri.vertex_names.push_back("CRb");

    auto wall_edge = [&](int v1, int v2, int w, bool up) {
        tri.edges.emplace_back(v1, v2);
        EdgeInfo e;
        e.kind = EdgeInfo::kWallEdge;
        e.wall = w;
        e.upper = up;
        m.infos.push_back(e);
    };
    auto chord_edge = [&](int v1, int v2, int strip, int ta, int tb) {
        tri.edges.emplace_back(v1, v2);
        EdgeInfo e;
        e.kind = EdgeInfo::kChordEdge;
        e.strip = strip;
        e.ta = ta;
        e.tb = tb;
        m.infos.push_back(e);
    };
    auto boundary_edge = [&](int v1, int v2) {
        tri.edges.emplace_back(v1, v2);
        m.infos.push_back(EdgeInfo{});
    };

    for (int k = 1; k <= n; ++k) {
        wall_edge(m.T(k), m.p(k), k, true);
        wall_edge(m.p(k), m.B(k), k, false);
    }
    chord_edge(m.p(1), m.CLt(), 0, kPR, kLBT);
    chord_edge(m.p(1), m.CLb(), 0, kPR, kLBB);
    for (int j = 1; j <= d; ++j) chord_edge(m.p(1), m.b(j), 0, kPR, base_token(j));
    for (int s = 1; s <= n - 1; ++s) {
        chord_edge(m.p(s), m.B(s + 1), s, kPL, kBFR);
        chord_edge(m.p(s), m.p(s + 1), s, kPL, kPR);
        chord_edge(m.p(s), m.T(s + 1), s, kPL, kTFR);
    }
    chord_edge(m.p(n), m.CRb(), n, kPL, kRBB);
    chord_edge(m.p(n), m.CRt(), n, kPL, kRBT);

    boundary_edge(m.CLt(), m.T(1));
    for (int k = 1; k <= n - 1; ++k) boundary_edge(m.T(k), m.T(k + 1));
    boundary_edge(m.T(n), m.CRt());
    boundary_edge(m.CRt(), m.CRb());
    boundary_edge(m.CLb(), m.b(1));
    for (int j = 1; j <= d - 1; ++j) boundary_edge(m.b(j), m.b(j + 1));
    boundary_edge(m.b(d), m.B(1));
    for (int k = 1; k <= n - 1; ++k) boundary_edge(m.B(k), m.B(k + 1));
    boundary_edge(m.B(n), m.CRb());
    boundary_edge(m.CLt(), m.CLb());

    auto tri_add = [&](int a, int b, int c) { tri.triangles.push_back({a, b, c}); };
    tri_add(m.p(1), m.CLt(), m.CLb());
    tri_add(m.p(1), m.CLb(), m.b(1));
    for (int j = 1; j <= d - 1; ++j) tri_add(m.p(1), m.b(j), m.b(j + 1));
    tri_add(m.p(1), m.b(d), m.B(1));
    tri_add(m.p(1), m.T(1), m.CLt());
    for (int s = 1; s <= n - 1; ++s) {
        tri_add(m.p(s), m.B(s), m.B(s + 1));
        tri_add(m.p(s), m.B(s + 1), m.p(s + 1));
        tri_add(m.p(s), m.p(s + 1), m.T(s + 1));
        tri_add(m.p(s), m.T(s + 1), m.T(s));
    }
    tri_add(m.p(n), m.B(n), m.CRb());
    tri_add(m.p(n), m.CRb(), m.CRt());
    tri_add(m.p(n), m.CRt(), m.T(n));
    return m;
}

std::vector<std::int64_t> edge_counts_impl(const Router& r, int n, int d) {
    DiskModel model = build_disk_model(n, d);
    std::vector<std::int64_t> counts(model.tri.edges.size(), 0);
    for (std::size_t e = 0; e < model.infos.size(); ++e) {
        const EdgeInfo& info = model.infos[e];
        if (info.kind == EdgeInfo::kWallEdge) {
            auto it = r.ray_count_.find({info.wall, info.upper});
            counts[e] = it == r.ray_count_.end() ? 0 : it->second;
        } else if (info.kind == EdgeInfo::kChordEdge) {
            std::int64_t ea = r.token_position(info.strip, info.ta);
            std::int64_t eb = r.token_position(info.strip, info.tb);
            for (std::size_t i = 0; i < r.arcs_.size(); ++i)
                for (int k = 0; k < r.chord_count(static_cast<int>(i)); ++k) {
                    if (r.chord_strip(static_cast<int>(i), k) != info.strip) continue;
                    ORef oa{static_cast<int>(i), k}, ob{static_cast<int>(i), k + 1};
                    int t1 = r.token_of(oa, info.strip), t2 = r.token_of(ob, info.strip);
                    if (t1 == info.ta || t1 == info.tb || t2 == info.ta || t2 == info.tb)
                        continue;  // shared endpoint, never transversal
                    auto p = r.chord_positions(static_cast<int>(i), k);
                    if (interleaved(p.first, p.second, ea, eb)) ++counts[e];
                }
        }
    }
    return counts;
}

bool consistency_impl(const Router& r, int n, int d, const std::vector<std::int64_t>& counts) {
    DiskModel model = build_disk_model(n, d);
    if (counts.size() != model.tri.edges.size()) return false;

    std::map<std::array<int, 3>, std::size_t> tri_index;
    for (std::size_t i = 0; i < model.tri.triangles.size(); ++i) {
        auto key = model.tri.triangles[i];
        std::sort(key.begin(), key.end());
        tri_index[key] = i;
    }
    std::map<std::pair<int, int>, std::size_t> edge_index;
    for (std::size_t e = 0; e < model.tri.edges.size(); ++e) {
        auto [u, v] = model.tri.edges[e];
        edge_index[{std::min(u, v), std::max(u, v)}] = e;
    }

    // Arc ends entering each triangle corner.
    std::map<std::pair<std::size_t, int>, std::int64_t> fans;
    auto add_fan = [&](int v0, int v1, int v2, int at) {
        std::array<int, 3> key{v0, v1, v2};
        std::sort(key.begin(), key.end());
        auto it = tri_index.find(key);
        if (it == tri_index.end()) throw internal_error("fan sector is not a triangle");
        ++fans[{it->second, at}];
    };

    for (std::size_t i = 0; i < r.arcs_.size(); ++i) {
        const Tether& t = *r.arcs_[i];
        int last = static_cast<int>(t.crossings.size()) + 1;
        {  // arrival end
            int s = r.chord_strip(static_cast<int>(i), last - 1);
            ORef o{static_cast<int>(i), last - 1};
            int to = r.token_of(o, s);
            if (t.arrive_left) {
                if (to == base_token(t.basepoint) && s == 0) {
                    // straight run parallel to a triangulation edge: invisible
                } else if (to == kLL) {
                    add_fan(model.p(s), model.B(s + 1), model.p(s + 1), model.p(s + 1));
                } else if (to == kUL) {
                    add_fan(model.p(s), model.p(s + 1), model.T(s + 1), model.p(s + 1));
                } else {
                    return false;
                }
            } else {
                if (to == kLR) {
                    add_fan(model.p(s), model.B(s + 1), model.p(s + 1), model.p(s));
                } else if (to == kUR) {
                    add_fan(model.p(s), model.p(s + 1), model.T(s + 1), model.p(s));
                } else {
                    return false;
                }
            }
        }
        {  // marked-point end
            ORef o{static_cast<int>(i), 1};
            int to = r.token_of(o, 0);
            int j = t.basepoint;
            if (to == kPR && t.crossings.empty()) {
                // straight run again
            } else if (to == kLR) {
                if (j < d)
                    add_fan(model.p(1), model.b(j), model.b(j + 1), model.b(j));
                else
                    add_fan(model.p(1), model.b(d), model.B(1), model.b(d));
            } else if (to == kUR) {
                if (j > 1)
                    add_fan(model.p(1), model.b(j - 1), model.b(j), model.b(j));
                else
                    add_fan(model.p(1), model.CLb(), model.b(1), model.b(1));
            } else {
                return false;
            }
        }
    }

    for (std::size_t ti = 0; ti < model.tri.triangles.size(); ++ti) {
        const auto& tv = model.tri.triangles[ti];
        std::array<std::int64_t, 3> opp{};  // count of the edge opposite each vertex
        std::array<std::int64_t, 3> fan{};
        for (int v = 0; v < 3; ++v) {
            int u1 = tv[(v + 1) % 3], u2 = tv[(v + 2) % 3];
            opp[v] = counts[edge_index.at({std::min(u1, u2), std::max(u1, u2)})];
            auto it = fans.find({ti, tv[v]});
            fan[v] = it == fans.end() ? 0 : it->second;
        }
        for (int v = 0; v < 3; ++v) {
            std::int64_t num =
                opp[(v + 1) % 3] + opp[(v + 2) % 3] - opp[v] + fan[v] - fan[(v + 1) % 3] -
                fan[(v + 2) % 3];
            if (num < 0 || num % 2 != 0) return false;
        }
    }
    return true;
}

}  // namespace

DiskTriangulation disk_triangulation(int punctures, int basepoints) {
    return build_disk_model(punctures, basepoints).tri;
}

std::vector<std::int64_t> routed_edge_counts(const std::vector<Tether>& arcs, int punctures,
                                             int basepoints) {
    std::vector<const Tether*> ptrs;
    for (const auto& a : arcs) ptrs.push_back(&a);
    Router r(ptrs, punctures, basepoints);
    return edge_counts_impl(r, punctures, basepoints);
}

bool edge_counts_consistent(const std::vector<Tether>& arcs, int punctures, int basepoints,
                            const std::vector<std::int64_t>& counts) {
    std::vector<const Tether*> ptrs;
    for (const auto& a : arcs) ptrs.push_back(&a);
    Router r(ptrs, punctures, basepoints);
    return consistency_impl(r, punctures, basepoints, counts);
}

}  // namespace stablab
