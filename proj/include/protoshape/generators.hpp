#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "protoshape/errors.hpp"
#include "protoshape/finite_space.hpp"

namespace protoshape {

/// Four points {a,b,c,d} with opens {X, {}, {a}, {c}, {a,b,c}, {a,d,c},
/// {a,c}}; the minimal finite model of the circle.
inline FiniteSpacePtr make_4circle() {
    std::vector<std::string> pts = {"a", "b", "c", "d"};
    auto set = [](std::initializer_list<std::uint32_t> xs) {
        PointSet s(4);
        for (auto x : xs) s.set(x);
        return s;
    };
    std::vector<PointSet> opens = {set({0, 1, 2, 3}), set({}),     set({0}),
                                   set({2}),          set({0, 1, 2}), set({0, 2, 3}),
                                   set({0, 2})};
    return validate_topology(pts, opens);
}

inline FiniteSpacePtr make_discrete(std::size_t n) {
    if (n == 0) throw InvalidValue("discrete space needs at least one point");
    std::vector<std::string> pts;
    std::vector<PointSet> mins;
    for (std::size_t i = 0; i < n; ++i) {
        pts.push_back("p" + std::to_string(i));
        PointSet s(static_cast<std::uint32_t>(n));
        s.set(static_cast<std::uint32_t>(i));
        mins.push_back(std::move(s));
    }
    return space_from_min_open(pts, mins);
}

/// Points {0,1} with opens {{}, {1}, {0,1}}.
inline FiniteSpacePtr make_sierpinski() {
    std::vector<std::string> pts = {"0", "1"};
    PointSet v0(2), v1(2);
    v0.set(0);
    v0.set(1);
    v1.set(1);
    return space_from_min_open(pts, {v0, v1});
}

/// n-fold non-Hausdorff suspension of the two-point discrete space: level 0
/// is {p0,q0} discrete, each further level adds p_k, q_k whose minimal open
/// set is everything below plus the point itself. 2n+2 points; weakly
/// homotopy equivalent to the n-sphere.
inline FiniteSpacePtr make_sphere(std::size_t n) {
    const auto total = static_cast<std::uint32_t>(2 * n + 2);
    std::vector<std::string> pts;
    std::vector<PointSet> mins;
    for (std::size_t k = 0; k <= n; ++k) {
        for (const char* base : {"p", "q"}) {
            pts.push_back(base + std::to_string(k));
            PointSet s(total);
            for (std::uint32_t below = 0; below < 2 * k; ++below) s.set(below);
            s.set(static_cast<std::uint32_t>(pts.size() - 1));
            mins.push_back(std::move(s));
        }
    }
    return space_from_min_open(pts, mins);
}

/// Random finite space from a random DAG on n ordered vertices: each edge
/// i -> j (i < j) is included when mt19937(seed) yields a multiple of 3 at
/// that draw (probability ~1/3); the preorder is the reflexive-transitive
/// closure. Raw generator words are used directly, so output is identical
/// across platforms.
inline FiniteSpacePtr make_random(std::uint32_t seed, std::size_t n) {
    if (n == 0) throw InvalidValue("random space needs at least one point");
    std::mt19937 gen(seed);
    const auto width = static_cast<std::uint32_t>(n);
    std::vector<PointSet> upper(n, PointSet(width));
    for (std::uint32_t i = 0; i < width; ++i) upper[i].set(i);
    for (std::uint32_t i = 0; i < width; ++i)
        for (std::uint32_t j = i + 1; j < width; ++j)
            if (gen() % 3 == 0) upper[i].set(j);
    // Transitive closure; the edge order above is part of the format.
    for (std::uint32_t k = 0; k < width; ++k)
        for (std::uint32_t i = 0; i < width; ++i)
            if (upper[i].test(k)) upper[i] |= upper[k];

    Preorder p;
    p.upper = std::move(upper);
    for (std::size_t i = 0; i < n; ++i) p.points.push_back("p" + std::to_string(i));
    return space_from_preorder(p);
}

/// Parses a generator name: 4circle | sierpinski | discrete:n | sphere:n |
/// random:seed,n.
inline FiniteSpacePtr make_named(const std::string& name) {
    auto parse_num = [&name](const std::string& text) -> std::uint64_t {
        if (text.empty()) throw InvalidValue("malformed generator name '" + name + "'");
        std::uint64_t v = 0;
        for (char c : text) {
            if (c < '0' || c > '9')
                throw InvalidValue("malformed generator name '" + name + "'");
            v = v * 10 + static_cast<std::uint64_t>(c - '0');
            if (v > 1000000) throw InvalidValue("generator parameter too large");
        }
        return v;
    };

    if (name == "4circle") return make_4circle();
    if (name == "sierpinski") return make_sierpinski();
    auto colon = name.find(':');
    if (colon != std::string::npos) {
        std::string head = name.substr(0, colon);
        std::string tail = name.substr(colon + 1);
        if (head == "discrete") return make_discrete(parse_num(tail));
        if (head == "sphere") return make_sphere(parse_num(tail));
        if (head == "random") {
            auto comma = tail.find(',');
            if (comma == std::string::npos)
                throw InvalidValue("random generator needs 'random:seed,n'");
            return make_random(static_cast<std::uint32_t>(parse_num(tail.substr(0, comma))),
                               parse_num(tail.substr(comma + 1)));
        }
    }
    throw InvalidValue("unknown generator name '" + name + "'");
}

} // namespace protoshape
