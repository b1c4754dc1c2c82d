#include "vreslab/io.hpp"

#include <set>

namespace vreslab {

Json to_json(const PointSet& pts) {
    Json j;
    j["n"] = pts.n();
    j["m"] = pts.m();
    j["p"] = pts.field().value();
    j["seed"] = pts.seed() ? Json(*pts.seed()) : Json(nullptr);
    Json arr = Json::array();
    for (const auto& pt : pts.points()) arr.push_back(Json::array({pt.x, pt.y}));
    j["points"] = std::move(arr);
    return j;
}

PointSet point_set_from_json(const Json& j) {
    const int n = j.at("n").get<int>();
    const int m = j.at("m").get<int>();
    const FieldPrime field(j.at("p").get<std::uint32_t>());
    std::optional<std::uint64_t> seed;
    if (j.contains("seed") && !j.at("seed").is_null()) seed = j.at("seed").get<std::uint64_t>();
    std::vector<Point> points;
    for (const auto& p : j.at("points")) {
        if (!p.is_array() || p.size() != 2) throw std::invalid_argument("point must be [[x...],[y...]]");
        points.push_back({p[0].get<std::vector<Residue>>(), p[1].get<std::vector<Residue>>()});
    }
    return PointSet(n, m, field, std::move(points), seed);
}

Json to_json(const BettiTable& bt) {
    Json j;
    j["window"] = {bt.window().i, bt.window().j};
    Json entries = Json::array();
    for (const auto& [key, beta] : bt.entries())
        entries.push_back({{"k", key.first}, {"i", key.second.i}, {"j", key.second.j}, {"beta", beta}});
    j["entries"] = std::move(entries);
    j["boundary_clean"] = bt.boundary_clean();
    return j;
}

BettiTable betti_table_from_json(const Json& j) {
    const auto w = j.at("window");
    BettiTable bt(BiDegree{w.at(0).get<int>(), w.at(1).get<int>()});
    for (const auto& e : j.at("entries"))
        bt.set(e.at("k").get<int>(), {e.at("i").get<int>(), e.at("j").get<int>()}, e.at("beta").get<std::int64_t>());
    bt.set_boundary_clean(j.at("boundary_clean").get<bool>());
    return bt;
}

Json to_json(const FreeComplexShape& shape) {
    Json stages = Json::array();
    for (const auto& st : shape.stages()) {
        Json s = Json::array();
        for (const auto& [tw, mult] : st) s.push_back({{"i", tw.i}, {"j", tw.j}, {"mult", mult}});
        stages.push_back(std::move(s));
    }
    return {{"stages", std::move(stages)}};
}

FreeComplexShape shape_from_json(const Json& j) {
    std::vector<FreeComplexShape::Stage> stages;
    for (const auto& s : j.at("stages")) {
        FreeComplexShape::Stage st;
        for (const auto& e : s) st[{e.at("i").get<int>(), e.at("j").get<int>()}] += e.at("mult").get<std::int64_t>();
        stages.push_back(std::move(st));
    }
    return FreeComplexShape(std::move(stages));
}

Json diff_report(const std::vector<CellDiff>& diffs) {
    Json arr = Json::array();
    for (const auto& d : diffs)
        arr.push_back({{"cell", {d.cell.i, d.cell.j}}, {"expected", d.expected}, {"actual", d.actual}});
    return arr;
}

Json shape_diff_report(const FreeComplexShape& expected, const FreeComplexShape& actual) {
    Json arr = Json::array();
    const std::size_t stages = std::max(expected.stages().size(), actual.stages().size());
    for (std::size_t k = 0; k < stages; ++k) {
        const FreeComplexShape::Stage empty;
        const auto& e = k < expected.stages().size() ? expected.stages()[k] : empty;
        const auto& a = k < actual.stages().size() ? actual.stages()[k] : empty;
        std::set<BiDegree> cells;
        for (const auto& [tw, mult] : e) cells.insert(tw);
        for (const auto& [tw, mult] : a) cells.insert(tw);
        for (const auto& c : cells) {
            const auto ev = e.count(c) ? e.at(c) : 0;
            const auto av = a.count(c) ? a.at(c) : 0;
            if (ev != av) arr.push_back({{"k", k}, {"cell", {c.i, c.j}}, {"expected", ev}, {"actual", av}});
        }
    }
    return arr;
}

Json to_json(const MrcReport& report, bool include_cells) {
    Json j;
    j["generic"] = report.generic;
    j["boundary_clean"] = report.boundary_clean;
    j["passed"] = report.passed;
    Json support = Json::array();
    for (const auto& [d, beta] : report.beta1_support) support.push_back({{"i", d.i}, {"j", d.j}, {"beta", beta}});
    j["beta1"] = std::move(support);
    Json bad = Json::array();
    for (const auto& c : report.cells) {
        if (!include_cells && c.ok) continue;
        bad.push_back({{"cell", {c.cell.i, c.cell.j}},
                       {"dh", c.dh},
                       {"predicted", c.predicted},
                       {"beta1", c.beta1},
                       {"ok", c.ok}});
    }
    j[include_cells ? "cells" : "failures"] = std::move(bad);
    return j;
}

}  // namespace vreslab
