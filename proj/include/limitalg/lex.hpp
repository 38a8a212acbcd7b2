// The lexicographic calculus: presentations of countable linear orderings
// with multiplicity functions, the interval-finiteness quotient, generalized
// integer pair invariants, the isomorphism and epimorphism decisions, and
// materialization of lexicographic towers.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "limitalg/core.hpp"

namespace limitalg {

/// A natural number or infinity, used as a prime exponent.
class ExtNat {
public:
    ExtNat() = default;
    explicit ExtNat(std::uint64_t v) : value_(v) {}
    static ExtNat infinity() {
        ExtNat e;
        e.infinite_ = true;
        return e;
    }

    bool is_infinite() const { return infinite_; }
    std::uint64_t value() const {
        if (infinite_) throw Error("ExtNat: infinite value has no finite representation");
        return value_;
    }

    ExtNat operator+(const ExtNat& o) const {
        if (infinite_ || o.infinite_) return infinity();
        return ExtNat(value_ + o.value_);
    }

    bool operator==(const ExtNat& o) const {
        return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_);
    }

private:
    bool infinite_ = false;
    std::uint64_t value_ = 0;
};

namespace detail {

inline std::map<std::uint64_t, std::uint64_t> factorize(std::uint64_t n) {
    std::map<std::uint64_t, std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n > 1) ++out[n];
    return out;
}

}  // namespace detail

/// A supernatural (generalized) integer: a prime-exponent map with infinity
/// allowed. Only nonzero exponents are stored.
class Supernatural {
public:
    Supernatural() = default;  // the value 1

    static Supernatural from_natural(std::uint64_t n) {
        if (n == 0) throw Error("supernatural numbers are positive");
        Supernatural s;
        for (const auto& [p, e] : detail::factorize(n)) s.exp_[p] = ExtNat(e);
        return s;
    }

    static Supernatural prime_power(std::uint64_t p, ExtNat e) {
        Supernatural s;
        if (!(e == ExtNat(0))) s.exp_[p] = e;
        return s;
    }

    ExtNat exponent(std::uint64_t p) const {
        auto it = exp_.find(p);
        return it == exp_.end() ? ExtNat(0) : it->second;
    }

    bool is_one() const { return exp_.empty(); }

    bool is_finite() const {
        for (const auto& [p, e] : exp_)
            if (e.is_infinite()) return false;
        return true;
    }

    std::vector<std::uint64_t> primes() const {
        std::vector<std::uint64_t> out;
        for (const auto& [p, e] : exp_) out.push_back(p);
        return out;
    }

    Supernatural times(const Supernatural& o) const {
        Supernatural s = *this;
        for (const auto& [p, e] : o.exp_) {
            const ExtNat sum = s.exponent(p) + e;
            s.exp_[p] = sum;
        }
        return s;
    }

    Supernatural times(std::uint64_t n) const { return times(from_natural(n)); }

    bool operator==(const Supernatural& o) const { return exp_ == o.exp_; }

    std::string to_string() const {
        if (exp_.empty()) return "1";
        std::string out;
        for (const auto& [p, e] : exp_) {
            if (!out.empty()) out += "*";
            out += std::to_string(p);
            if (e.is_infinite())
                out += "^inf";
            else if (!(e == ExtNat(1)))
                out += "^" + std::to_string(e.value());
        }
        return out;
    }

    const std::map<std::uint64_t, ExtNat>& exponents() const { return exp_; }

private:
    std::map<std::uint64_t, ExtNat> exp_;
};

/// An eventually periodic integer sequence, 1-indexed from the end of its
/// segment adjacent to the rest of the order.
struct EventuallyPeriodic {
    std::vector<int> pre;
    std::vector<int> period;

    int at(std::size_t k) const {  // 1-based
        if (k == 0) throw Error("sequence index is 1-based");
        if (k <= pre.size()) return pre[k - 1];
        if (period.empty()) throw Error("sequence exhausted and no period");
        return period[(k - pre.size() - 1) % period.size()];
    }

    std::size_t window() const { return pre.size() + period.size(); }

    std::vector<int> first(std::size_t d) const {
        std::vector<int> out;
        for (std::size_t k = 1; k <= d; ++k) out.push_back(at(k));
        return out;
    }

    /// Drops the first d entries.
    EventuallyPeriodic shifted(std::size_t d) const {
        EventuallyPeriodic out;
        if (d <= pre.size()) {
            out.pre.assign(pre.begin() + static_cast<long>(d), pre.end());
            out.period = period;
        } else {
            const std::size_t r = (d - pre.size()) % period.size();
            out.period.assign(period.begin() + static_cast<long>(r), period.end());
            out.period.insert(out.period.end(), period.begin(),
                              period.begin() + static_cast<long>(r));
        }
        return out;
    }

    EventuallyPeriodic prepended(const std::vector<int>& front) const {
        EventuallyPeriodic out;
        out.pre = front;
        out.pre.insert(out.pre.end(), pre.begin(), pre.end());
        out.period = period;
        return out;
    }

    bool operator==(const EventuallyPeriodic&) const = default;
};

/// Exponent of p is the preperiod contribution plus infinity when p divides
/// any period entry.
inline Supernatural supernatural_from_sequence(const EventuallyPeriodic& seq) {
    Supernatural s;
    for (int v : seq.pre) {
        if (v < 1) throw Error("multiplicity sequence entries must be positive");
        s = s.times(static_cast<std::uint64_t>(v));
    }
    for (int v : seq.period) {
        if (v < 1) throw Error("multiplicity sequence entries must be positive");
        for (const auto& [p, e] : detail::factorize(static_cast<std::uint64_t>(v))) {
            (void)e;
            s = s.times(Supernatural::prime_power(p, ExtNat::infinity()));
        }
    }
    return s;
}

/// An ordered pair of supernaturals; compared up to the coprime-transfer
/// equivalence, never by raw equality.
struct GIPair {
    Supernatural r;
    Supernatural s;

    bool operator==(const GIPair&) const = default;
    std::string to_string() const { return "(" + r.to_string() + ", " + s.to_string() + ")"; }
};

struct PairEquivalence {
    bool equivalent = false;
    std::uint64_t a = 1;  // smallest coprime witness, meaningful when equivalent
    std::uint64_t b = 1;
    std::string reason;
};

/// Decides (r,s) ~ (r',s'): rs = r's' and coprime a,b with br = ar', as = bs'.
/// Solved prime by prime; an infinity on exactly one side of an equation
/// forces inequivalence, infinities on both sides impose no constraint.
inline PairEquivalence pair_equiv(const GIPair& x, const GIPair& y) {
    if (!(x.r.times(x.s) == y.r.times(y.s)))
        return {false, 1, 1, "products r*s differ"};
    std::set<std::uint64_t> primes;
    for (auto p : x.r.primes()) primes.insert(p);
    for (auto p : x.s.primes()) primes.insert(p);
    for (auto p : y.r.primes()) primes.insert(p);
    for (auto p : y.s.primes()) primes.insert(p);

    std::uint64_t a = 1, b = 1;
    for (const auto p : primes) {
        const ExtNat r1 = x.r.exponent(p), r2 = y.r.exponent(p);
        const ExtNat s1 = x.s.exponent(p), s2 = y.s.exponent(p);
        std::optional<long long> delta;  // v_p(b) - v_p(a)
        if (r1.is_infinite() != r2.is_infinite())
            return {false, 1, 1,
                    "prime " + std::to_string(p) + ": r-exponents mix finite and infinite"};
        if (!r1.is_infinite())
            delta = static_cast<long long>(r2.value()) - static_cast<long long>(r1.value());
        if (s1.is_infinite() != s2.is_infinite())
            return {false, 1, 1,
                    "prime " + std::to_string(p) + ": s-exponents mix finite and infinite"};
        if (!s1.is_infinite()) {
            const long long d2 =
                static_cast<long long>(s1.value()) - static_cast<long long>(s2.value());
            if (delta && *delta != d2)
                return {false, 1, 1,
                        "prime " + std::to_string(p) + ": transfer amounts disagree"};
            if (!delta) delta = d2;
        }
        const long long d = delta.value_or(0);
        for (long long k = 0; k < (d > 0 ? d : -d); ++k) {
            if (d > 0)
                b *= p;
            else
                a *= p;
        }
    }
    return {true, a, b, ""};
}

/// The canonical representative of a ~ class: per prime, transferable finite
/// mass is moved to the r side and a side opposite an infinity is cleared.
inline GIPair canonical_pair(const GIPair& x) {
    std::set<std::uint64_t> primes;
    for (auto p : x.r.primes()) primes.insert(p);
    for (auto p : x.s.primes()) primes.insert(p);
    GIPair out;
    for (const auto p : primes) {
        const ExtNat r = x.r.exponent(p), s = x.s.exponent(p);
        if (r.is_infinite() && s.is_infinite()) {
            out.r = out.r.times(Supernatural::prime_power(p, ExtNat::infinity()));
            out.s = out.s.times(Supernatural::prime_power(p, ExtNat::infinity()));
        } else if (r.is_infinite()) {
            out.r = out.r.times(Supernatural::prime_power(p, ExtNat::infinity()));
        } else if (s.is_infinite()) {
            out.s = out.s.times(Supernatural::prime_power(p, ExtNat::infinity()));
        } else {
            out.r = out.r.times(Supernatural::prime_power(p, r + s));
        }
    }
    return out;
}

enum class SegmentShape { Finite, OmegaPlus, OmegaMinus, Zeta };

inline std::string to_string(SegmentShape s) {
    switch (s) {
        case SegmentShape::Finite: return "finite";
        case SegmentShape::OmegaPlus: return "omega_plus";
        case SegmentShape::OmegaMinus: return "omega_minus";
        case SegmentShape::Zeta: return "zeta";
    }
    return "?";
}

/// A primitive ordered segment carrying its multiplicity data.
///   Finite     - nu lists the multiplicities in ascending order
///   OmegaPlus  - seq indexed upward from the least element
///   OmegaMinus - seq indexed downward from the greatest element
///   Zeta       - desc indexed downward, asc upward, from a chosen origin
struct Segment {
    SegmentShape shape = SegmentShape::Finite;
    std::vector<int> nu;
    EventuallyPeriodic seq;
    EventuallyPeriodic desc, asc;

    static Segment finite(std::vector<int> multiplicities) {
        if (multiplicities.empty()) throw Error("finite segment needs at least one element");
        for (int v : multiplicities)
            if (v < 2) throw Error("multiplicities must be >= 2");
        Segment s;
        s.shape = SegmentShape::Finite;
        s.nu = std::move(multiplicities);
        return s;
    }

    static Segment omega_plus(EventuallyPeriodic sequence) {
        check_sequence(sequence);
        Segment s;
        s.shape = SegmentShape::OmegaPlus;
        s.seq = std::move(sequence);
        return s;
    }

    static Segment omega_minus(EventuallyPeriodic sequence) {
        check_sequence(sequence);
        Segment s;
        s.shape = SegmentShape::OmegaMinus;
        s.seq = std::move(sequence);
        return s;
    }

    static Segment zeta(EventuallyPeriodic descending, EventuallyPeriodic ascending) {
        check_sequence(descending);
        check_sequence(ascending);
        Segment s;
        s.shape = SegmentShape::Zeta;
        s.desc = std::move(descending);
        s.asc = std::move(ascending);
        return s;
    }

    bool operator==(const Segment&) const = default;

private:
    static void check_sequence(const EventuallyPeriodic& s) {
        if (s.period.empty()) throw Error("infinite segment needs a nonempty period");
        for (int v : s.pre)
            if (v < 2) throw Error("multiplicities must be >= 2");
        for (int v : s.period)
            if (v < 2) throw Error("multiplicities must be >= 2");
    }
};

/// A finite concatenation of segments. Parsed documents are nonempty; the
/// empty value appears only as the head or tail of a cut.
struct LinearOrderPresentation {
    std::vector<Segment> segments;

    bool empty() const { return segments.empty(); }
    bool operator==(const LinearOrderPresentation&) const = default;
};

/// One rewrite step of the interval-finiteness quotient; nullopt when the
/// adjacent pair does not merge.
inline std::optional<Segment> merge_adjacent(const Segment& a, const Segment& b) {
    if (a.shape == SegmentShape::Finite && b.shape == SegmentShape::Finite) {
        std::vector<int> nu = a.nu;
        nu.insert(nu.end(), b.nu.begin(), b.nu.end());
        return Segment::finite(std::move(nu));
    }
    if (a.shape == SegmentShape::Finite && b.shape == SegmentShape::OmegaPlus)
        return Segment::omega_plus(b.seq.prepended(a.nu));
    if (a.shape == SegmentShape::OmegaMinus && b.shape == SegmentShape::Finite) {
        std::vector<int> rev(b.nu.rbegin(), b.nu.rend());
        return Segment::omega_minus(a.seq.prepended(rev));
    }
    if (a.shape == SegmentShape::OmegaMinus && b.shape == SegmentShape::OmegaPlus)
        return Segment::zeta(a.seq, b.seq);
    return std::nullopt;
}

/// The generalized-integer pair of a single merged class, stored canonically.
inline GIPair class_invariant(const Segment& cls) {
    GIPair raw;
    switch (cls.shape) {
        case SegmentShape::Finite: {
            Supernatural r;
            for (int v : cls.nu) r = r.times(static_cast<std::uint64_t>(v));
            raw = {r, Supernatural{}};
            break;
        }
        case SegmentShape::OmegaPlus:
            raw = {supernatural_from_sequence(cls.seq), Supernatural{}};
            break;
        case SegmentShape::OmegaMinus:
            raw = {Supernatural{}, supernatural_from_sequence(cls.seq)};
            break;
        case SegmentShape::Zeta:
            raw = {supernatural_from_sequence(cls.asc), supernatural_from_sequence(cls.desc)};
            break;
    }
    return canonical_pair(raw);
}

struct QuotientClass {
    Segment cls;
    GIPair invariant;  // canonical representative

    bool operator==(const QuotientClass&) const = default;
};

struct QuotientPresentation {
    std::vector<QuotientClass> classes;

    bool operator==(const QuotientPresentation&) const = default;
};

/// Normal form under the merge rules (confluent), with class invariants.
inline QuotientPresentation approx_quotient(const LinearOrderPresentation& p) {
    std::vector<Segment> segs = p.segments;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
            if (auto merged = merge_adjacent(segs[i], segs[i + 1])) {
                segs[i] = std::move(*merged);
                segs.erase(segs.begin() + static_cast<long>(i) + 1);
                changed = true;
                break;
            }
        }
    }
    QuotientPresentation out;
    for (auto& s : segs) out.classes.push_back({s, class_invariant(s)});
    return out;
}

struct IsoDecision {
    bool isomorphic = false;
    std::string reason;
    std::vector<PairEquivalence> class_witnesses;  // one per quotient class when yes
};

/// The isomorphism decision: equal quotient lengths and classwise equivalent
/// invariants under the unique order bijection of finite linear orders.
inline IsoDecision decide_iso(const LinearOrderPresentation& p1,
                              const LinearOrderPresentation& p2) {
    const auto q1 = approx_quotient(p1);
    const auto q2 = approx_quotient(p2);
    if (q1.classes.size() != q2.classes.size())
        return {false,
                "quotient lengths differ (" + std::to_string(q1.classes.size()) + " vs " +
                    std::to_string(q2.classes.size()) + ")",
                {}};
    IsoDecision out;
    out.isomorphic = true;
    for (std::size_t i = 0; i < q1.classes.size(); ++i) {
        auto eq = pair_equiv(q1.classes[i].invariant, q2.classes[i].invariant);
        if (!eq.equivalent)
            return {false,
                    "class " + std::to_string(i + 1) + " invariants " +
                        q1.classes[i].invariant.to_string() + " and " +
                        q2.classes[i].invariant.to_string() + " are not equivalent: " + eq.reason,
                    {}};
        out.class_witnesses.push_back(eq);
    }
    return out;
}

/// No minimal element iff the first quotient class descends without end.
inline bool is_primitive(const LinearOrderPresentation& p) {
    if (p.empty()) return false;
    const auto q = approx_quotient(p);
    const auto s = q.classes.front().cls.shape;
    return s == SegmentShape::OmegaMinus || s == SegmentShape::Zeta;
}

/// An order interval decomposition head + tail of a presentation.
struct Cut {
    LinearOrderPresentation head;
    LinearOrderPresentation tail;
    std::string description;
};

/// All decompositions respecting the presentation: between segments (with the
/// empty head), inside Finite segments, and inside infinite segments down to
/// one full period past the preperiod. Tails are always nonempty.
inline std::vector<Cut> enumerate_cuts(const LinearOrderPresentation& p) {
    std::vector<Cut> cuts;
    const auto& segs = p.segments;
    auto slice = [&](std::size_t from, std::size_t to) {
        LinearOrderPresentation out;
        out.segments.assign(segs.begin() + static_cast<long>(from),
                            segs.begin() + static_cast<long>(to));
        return out;
    };
    for (std::size_t i = 0; i < segs.size(); ++i) {
        cuts.push_back({slice(0, i), slice(i, segs.size()),
                        "before segment " + std::to_string(i + 1)});
        const Segment& s = segs[i];
        auto with_parts = [&](std::optional<Segment> head_part, std::optional<Segment> tail_part,
                              const std::string& what) {
            Cut c;
            c.head = slice(0, i);
            if (head_part) c.head.segments.push_back(std::move(*head_part));
            if (tail_part) c.tail.segments.push_back(std::move(*tail_part));
            const auto rest = slice(i + 1, segs.size());
            c.tail.segments.insert(c.tail.segments.end(), rest.segments.begin(),
                                   rest.segments.end());
            c.description = what;
            if (!c.tail.empty()) cuts.push_back(std::move(c));
        };
        switch (s.shape) {
            case SegmentShape::Finite:
                for (std::size_t d = 1; d < s.nu.size(); ++d)
                    with_parts(Segment::finite({s.nu.begin(), s.nu.begin() + static_cast<long>(d)}),
                               Segment::finite({s.nu.begin() + static_cast<long>(d), s.nu.end()}),
                               "inside segment " + std::to_string(i + 1) + " after " +
                                   std::to_string(d));
                break;
            case SegmentShape::OmegaPlus:
                for (std::size_t d = 1; d <= s.seq.window(); ++d)
                    with_parts(Segment::finite(s.seq.first(d)),
                               Segment::omega_plus(s.seq.shifted(d)),
                               "inside segment " + std::to_string(i + 1) + " after " +
                                   std::to_string(d));
                break;
            case SegmentShape::OmegaMinus:
                for (std::size_t d = 1; d <= s.seq.window(); ++d) {
                    const auto top = s.seq.first(d);
                    with_parts(Segment::omega_minus(s.seq.shifted(d)),
                               Segment::finite({top.rbegin(), top.rend()}),
                               "inside segment " + std::to_string(i + 1) + " keeping top " +
                                   std::to_string(d) + " on the tail");
                }
                break;
            case SegmentShape::Zeta: {
                with_parts(Segment::omega_minus(s.desc), Segment::omega_plus(s.asc),
                           "segment " + std::to_string(i + 1) + " at the seam");
                for (std::size_t d = 1; d <= s.asc.window(); ++d) {
                    const auto low = s.asc.first(d);
                    with_parts(Segment::omega_minus(s.desc.prepended({low.rbegin(), low.rend()})),
                               Segment::omega_plus(s.asc.shifted(d)),
                               "segment " + std::to_string(i + 1) + " seam offset +" +
                                   std::to_string(d));
                }
                for (std::size_t d = 1; d <= s.desc.window(); ++d) {
                    const auto low = s.desc.first(d);
                    with_parts(Segment::omega_minus(s.desc.shifted(d)),
                               Segment::omega_plus(s.asc.prepended(low)),
                               "segment " + std::to_string(i + 1) + " seam offset -" +
                                   std::to_string(d));
                }
                break;
            }
        }
    }
    return cuts;
}

struct EpiDecision {
    enum class Kind { Yes, No, TargetNotPrimitive } kind = Kind::No;
    std::optional<Cut> witness;
    std::string reason;
};

/// The epimorphism decision onto a primitive target: some cut has a tail with
/// no minimal element isomorphic to the target. Refuses non-primitive targets
/// outright; the criterion does not hold for them.
inline EpiDecision decide_epi(const LinearOrderPresentation& src,
                              const LinearOrderPresentation& tgt) {
    if (!is_primitive(tgt))
        return {EpiDecision::Kind::TargetNotPrimitive, std::nullopt,
                "target presentation has a minimal element"};
    for (const auto& cut : enumerate_cuts(src)) {
        if (cut.tail.empty()) continue;
        if (!is_primitive(cut.tail)) continue;  // tail must have no minimal element
        if (decide_iso(cut.tail, tgt).isomorphic)
            return {EpiDecision::Kind::Yes, cut, "tail of cut is isomorphic to the target"};
    }
    return {EpiDecision::Kind::No, std::nullopt,
            "no order interval decomposition has a minimal-element-free tail isomorphic to "
            "the target"};
}

/// A point of the ordering: a segment index plus a position within it.
/// Positions are 1-based; Finite and OmegaPlus count upward from the least
/// element, OmegaMinus counts downward from the greatest, and Zeta uses
/// signed positions (+k ascending, -k descending, no zero).
struct OmegaElement {
    int segment = 0;
    long position = 1;

    auto operator<=>(const OmegaElement&) const = default;
};

inline void check_element(const LinearOrderPresentation& p, const OmegaElement& e) {
    if (e.segment < 0 || e.segment >= static_cast<int>(p.segments.size()))
        throw InputError("enumeration element: segment index out of range");
    const Segment& s = p.segments[static_cast<std::size_t>(e.segment)];
    switch (s.shape) {
        case SegmentShape::Finite:
            if (e.position < 1 || e.position > static_cast<long>(s.nu.size()))
                throw InputError("enumeration element: position outside the finite segment");
            break;
        case SegmentShape::OmegaPlus:
        case SegmentShape::OmegaMinus:
            if (e.position < 1) throw InputError("enumeration element: position must be >= 1");
            break;
        case SegmentShape::Zeta:
            if (e.position == 0) throw InputError("enumeration element: zeta has no position 0");
            break;
    }
}

/// The order of the presentation on its points.
inline bool omega_less(const LinearOrderPresentation& p, const OmegaElement& a,
                       const OmegaElement& b) {
    check_element(p, a);
    check_element(p, b);
    if (a.segment != b.segment) return a.segment < b.segment;
    const Segment& s = p.segments[static_cast<std::size_t>(a.segment)];
    switch (s.shape) {
        case SegmentShape::Finite:
        case SegmentShape::OmegaPlus:
            return a.position < b.position;
        case SegmentShape::OmegaMinus:
            return a.position > b.position;  // position 1 is the greatest
        case SegmentShape::Zeta: {
            if (a.position < 0 && b.position > 0) return true;
            if (a.position > 0 && b.position < 0) return false;
            if (a.position > 0) return a.position < b.position;
            return a.position > b.position;  // both negative: -3 < -2 < -1
        }
    }
    return false;
}

inline int multiplicity_at(const LinearOrderPresentation& p, const OmegaElement& e) {
    check_element(p, e);
    const Segment& s = p.segments[static_cast<std::size_t>(e.segment)];
    switch (s.shape) {
        case SegmentShape::Finite:
            return s.nu[static_cast<std::size_t>(e.position) - 1];
        case SegmentShape::OmegaPlus:
        case SegmentShape::OmegaMinus:
            return s.seq.at(static_cast<std::size_t>(e.position));
        case SegmentShape::Zeta:
            return e.position > 0 ? s.asc.at(static_cast<std::size_t>(e.position))
                                  : s.desc.at(static_cast<std::size_t>(-e.position));
    }
    return 0;
}

/// An explicit finite prefix of an injection of the naturals into the order.
struct Enumeration {
    std::vector<OmegaElement> elements;
};

/// Round-robin across segments so every element is eventually enumerated;
/// zeta segments alternate +1, -1, +2, -2, ...
inline Enumeration default_enumeration(const LinearOrderPresentation& p, int count) {
    Enumeration out;
    std::vector<long> next(p.segments.size(), 1);  // per-segment progress counter
    while (static_cast<int>(out.elements.size()) < count) {
        bool yielded = false;
        for (std::size_t i = 0; i < p.segments.size() &&
                                static_cast<int>(out.elements.size()) < count;
             ++i) {
            const Segment& s = p.segments[i];
            const long k = next[i];
            OmegaElement e{static_cast<int>(i), k};
            switch (s.shape) {
                case SegmentShape::Finite:
                    if (k > static_cast<long>(s.nu.size())) continue;
                    break;
                case SegmentShape::OmegaPlus:
                case SegmentShape::OmegaMinus:
                    break;
                case SegmentShape::Zeta:
                    // progress counter k = 1,2,3,4,... maps to +1,-1,+2,-2,...
                    e.position = (k % 2 == 1) ? (k + 1) / 2 : -(k / 2);
                    break;
            }
            ++next[i];
            out.elements.push_back(e);
            yielded = true;
        }
        if (!yielded)
            throw InputError("presentation has only " + std::to_string(out.elements.size()) +
                             " elements; cannot enumerate " + std::to_string(count));
    }
    return out;
}

/// Materializes the tower of the lexicographic construction: level n is the
/// upper triangular span of the multi-index units ordered by comparing at the
/// order-least differing position; each embedding appends the next enumerated
/// coordinate.
inline Tower lex_tower(const LinearOrderPresentation& p, const Enumeration& en, int depth) {
    check_tower_depth(depth);
    if (p.empty()) throw InputError("lex_tower: empty presentation");
    const int needed = depth + 1;
    if (static_cast<int>(en.elements.size()) < needed)
        throw InputError("enumeration provides " + std::to_string(en.elements.size()) +
                         " elements; depth " + std::to_string(depth) + " needs " +
                         std::to_string(needed));
    for (int i = 0; i < needed; ++i) {
        check_element(p, en.elements[static_cast<std::size_t>(i)]);
        for (int j = i + 1; j < needed; ++j)
            if (en.elements[static_cast<std::size_t>(i)] ==
                en.elements[static_cast<std::size_t>(j)])
                throw InputError("enumeration is not injective");
    }

    std::vector<int> nus;
    long long size = 1;
    for (int i = 0; i < needed; ++i) {
        nus.push_back(multiplicity_at(p, en.elements[static_cast<std::size_t>(i)]));
        size *= nus.back();
        if (size > kMaxDiagonalSize) throw InputError("tower level size cap exceeded");
    }

    // Sorted multi-index lists per level; significance = order position of the
    // enumerated element (least element of the order is the most significant).
    using MultiIndex = std::vector<int>;
    auto level_indices = [&](int n) {
        std::vector<std::size_t> sig(static_cast<std::size_t>(n));
        for (std::size_t k = 0; k < sig.size(); ++k) sig[k] = k;
        std::sort(sig.begin(), sig.end(), [&](std::size_t a, std::size_t b) {
            return omega_less(p, en.elements[a], en.elements[b]);
        });
        std::vector<MultiIndex> idxs{{}};
        for (int k = 0; k < n; ++k) {
            std::vector<MultiIndex> next;
            next.reserve(idxs.size() * static_cast<std::size_t>(nus[static_cast<std::size_t>(k)]));
            for (const auto& t : idxs)
                for (int v = 1; v <= nus[static_cast<std::size_t>(k)]; ++v) {
                    MultiIndex u = t;
                    u.push_back(v);
                    next.push_back(std::move(u));
                }
            idxs = std::move(next);
        }
        std::sort(idxs.begin(), idxs.end(), [&](const MultiIndex& x, const MultiIndex& y) {
            for (const auto k : sig) {
                if (x[k] != y[k]) return x[k] < y[k];
            }
            return false;
        });
        return idxs;
    };

    std::vector<DigraphAlgebra> levels;
    std::vector<RegularEmbedding> embeddings;
    std::vector<MultiIndex> prev = level_indices(1);
    levels.push_back(make_upper_triangular(static_cast<int>(prev.size())));
    for (int n = 2; n <= needed; ++n) {
        auto cur = level_indices(n);
        std::map<MultiIndex, int> pos;
        for (std::size_t i = 0; i < cur.size(); ++i) pos[cur[i]] = static_cast<int>(i) + 1;
        SpreadTable spread;
        for (std::size_t i = 0; i < prev.size(); ++i) {
            std::vector<Diag> targets;
            for (int v = 1; v <= nus[static_cast<std::size_t>(n) - 1]; ++v) {
                MultiIndex t = prev[i];
                t.push_back(v);
                targets.push_back({0, pos.at(t)});
            }
            spread[{0, static_cast<int>(i) + 1}] = std::move(targets);
        }
        levels.push_back(make_upper_triangular(static_cast<int>(cur.size())));
        embeddings.emplace_back(levels[static_cast<std::size_t>(n) - 2],
                                levels[static_cast<std::size_t>(n) - 1], std::move(spread));
        prev = std::move(cur);
    }
    GeneratorInfo info{GeneratorKind::Lexicographic, /*per_step_growth=*/true, std::nullopt,
                       "lexicographic depth=" + std::to_string(depth)};
    return Tower(std::move(levels), std::move(embeddings), std::move(info));
}

inline Tower lex_tower(const LinearOrderPresentation& p, int depth) {
    return lex_tower(p, default_enumeration(p, depth + 1), depth);
}

}  // namespace limitalg
