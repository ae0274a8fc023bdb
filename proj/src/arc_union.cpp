#include "hitlab/arc_union.hpp"

#include <algorithm>

namespace hitlab {

ArcUnion ArcUnion::from_pieces(
    std::vector<std::pair<Rational, Rational>> ps) {
    std::sort(ps.begin(), ps.end());
    ArcUnion out;
    for (auto& p : ps) {
        if (p.first >= p.second) continue;  // empty piece
        if (!out.arcs_.empty() && p.first <= out.arcs_.back().second) {
            if (p.second > out.arcs_.back().second)
                out.arcs_.back().second = p.second;
        } else {
            out.arcs_.push_back(p);
        }
    }
    for (const auto& a : out.arcs_) out.measure_ += a.second - a.first;
    return out;
}

ArcUnion ArcUnion::arc(const Rational& l, const Rational& len) {
    if (len < 0 || len > 1) throw ConfigError("arc length must be in [0,1]");
    if (len == 0) return {};
    if (len == 1) return full();
    Rational a = frac(l);
    Rational b = a + len;
    if (b <= 1) return from_pieces({{a, b}});
    return from_pieces({{a, Rational(1)}, {Rational(0), b - 1}});
}

ArcUnion ArcUnion::ball(const Rational& center, const Rational& radius) {
    if (radius <= 0 || radius >= Rational(1, 2))
        throw ConfigError("ball radius must lie strictly between 0 and 1/2");
    return arc(center - radius, 2 * radius);
}

ArcUnion ArcUnion::full() {
    ArcUnion out;
    out.arcs_.push_back({Rational(0), Rational(1)});
    out.measure_ = 1;
    return out;
}

ArcUnion ArcUnion::union_of_balls(const std::vector<Rational>& centers,
                                  const Rational& radius) {
    if (radius <= 0 || radius >= Rational(1, 2))
        throw ConfigError("ball radius must lie strictly between 0 and 1/2");
    std::vector<std::pair<Rational, Rational>> ps;
    ps.reserve(2 * centers.size());
    for (const auto& c : centers) {
        Rational a = frac(c - radius);
        Rational b = a + 2 * radius;
        if (b <= 1) {
            ps.emplace_back(a, b);
        } else {
            ps.emplace_back(a, Rational(1));
            ps.emplace_back(Rational(0), b - 1);
        }
    }
    return from_pieces(std::move(ps));
}

ArcUnion ArcUnion::unite(const ArcUnion& o) const {
    auto ps = arcs_;
    ps.insert(ps.end(), o.arcs_.begin(), o.arcs_.end());
    return from_pieces(std::move(ps));
}

ArcUnion ArcUnion::subtract(const ArcUnion& o) const {
    std::vector<std::pair<Rational, Rational>> out;
    for (const auto& a : arcs_) {
        Rational lo = a.first;
        const Rational& hi = a.second;
        for (const auto& b : o.arcs_) {
            if (b.second <= lo) continue;
            if (b.first >= hi) break;
            if (b.first > lo) out.emplace_back(lo, b.first);
            lo = std::max(lo, b.second);
            if (lo >= hi) break;
        }
        if (lo < hi) out.emplace_back(lo, hi);
    }
    return from_pieces(std::move(out));
}

ArcUnion ArcUnion::intersect(const ArcUnion& o) const {
    std::vector<std::pair<Rational, Rational>> out;
    std::size_t j = 0;
    for (const auto& a : arcs_) {
        while (j > 0 && o.arcs_[j - 1].second > a.first) --j;
        for (std::size_t k = j; k < o.arcs_.size(); ++k) {
            const auto& b = o.arcs_[k];
            if (b.second <= a.first) {
                j = k + 1;
                continue;
            }
            if (b.first >= a.second) break;
            out.emplace_back(std::max(a.first, b.first),
                             std::min(a.second, b.second));
        }
    }
    return from_pieces(std::move(out));
}

ArcUnion ArcUnion::shift(const Rational& t) const {
    std::vector<std::pair<Rational, Rational>> out;
    Rational s = frac(t);
    for (const auto& a : arcs_) {
        Rational lo = a.first + s, hi = a.second + s;
        if (hi <= 1) {
            out.emplace_back(lo, hi);
        } else if (lo >= 1) {
            out.emplace_back(lo - 1, hi - 1);
        } else {
            out.emplace_back(lo, Rational(1));
            out.emplace_back(Rational(0), hi - 1);
        }
    }
    return from_pieces(std::move(out));
}

bool ArcUnion::contains(const Rational& x) const {
    Rational v = frac(x);
    auto it = std::upper_bound(
        arcs_.begin(), arcs_.end(), v,
        [](const Rational& val, const std::pair<Rational, Rational>& a) {
            return val < a.first;
        });
    if (it == arcs_.begin()) return false;
    --it;
    return v < it->second;
}

}  // namespace hitlab
