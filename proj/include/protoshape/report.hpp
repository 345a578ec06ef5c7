#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "protoshape/document.hpp"
#include "protoshape/errors.hpp"
#include "protoshape/finite_space.hpp"
#include "protoshape/generators.hpp"
#include "protoshape/homology.hpp"
#include "protoshape/hypercover.hpp"
#include "protoshape/proset.hpp"
#include "protoshape/simplicial.hpp"

namespace protoshape {

struct CommandOptions {
    std::string command;
    std::string input_json; // space document text; empty when --name is used
    std::string cover_json; // cover document text; empty selects the finest cover
    std::string name;       // generator name (generate, or input shortcut)
    std::string kind = "cech";  // hypercheck
    int max_degree = 2;
    int depth = 0; // 0 = derive from max_degree
    std::size_t max_points = 12;
};

struct RunResult {
    Json output;
    int exit_code = 0;
};

namespace detail {

inline std::string fnv1a_digest(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = hex[h & 0xf];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string("fnv1a:") + buf;
}

inline Json homology_to_json(const HomologyGroups& h) {
    Json arr = Json::array();
    for (std::size_t n = 0; n < h.degrees.size(); ++n) {
        Json row;
        row["degree"] = n;
        row["betti"] = h.degrees[n].betti;
        Json torsion = Json::array();
        for (const auto& t : h.degrees[n].torsion) {
            if (t > Int(1) << 53)
                throw InvalidValue("torsion coefficient too large for the report format");
            torsion.push_back(t.convert_to<std::int64_t>());
        }
        row["torsion"] = torsion;
        arr.push_back(row);
    }
    return arr;
}

inline Json space_summary(const FiniteSpace& space) {
    Json s;
    s["point_count"] = space.size();
    Json pts = Json::array();
    for (const auto& p : space.points) pts.push_back(p);
    s["points"] = pts;
    Preorder pre = specialization_preorder(space);
    bool t0 = true;
    for (std::uint32_t x = 0; x < pre.size() && t0; ++x)
        for (std::uint32_t y = 0; y < pre.size() && t0; ++y)
            if (x != y && pre.leq(x, y) && pre.leq(y, x)) t0 = false;
    s["t0"] = t0;
    return s;
}

struct Verdict {
    std::string name;
    bool pass = true;
    bool required = true;
    std::string witness;
};

inline Json report_skeleton(const CommandOptions& opt, const std::string& digest_source) {
    Json r;
    r["format_version"] = kFormatVersion;
    r["command"] = opt.command;
    r["input_digest"] = fnv1a_digest(digest_source);
    r["admissibility"] = "all-covers";
    r["max_degree"] = opt.max_degree;
    return r;
}

inline RunResult finish_report(Json report, const std::vector<Verdict>& verdicts) {
    Json arr = Json::array();
    bool ok = true;
    for (const auto& v : verdicts) {
        Json j;
        j["name"] = v.name;
        j["pass"] = v.pass;
        j["required"] = v.required;
        if (!v.witness.empty()) j["witness"] = v.witness;
        arr.push_back(j);
        if (v.required && !v.pass) ok = false;
    }
    report["verdicts"] = arr;
    report["status"] = ok ? "ok" : "verification_failed";
    return RunResult{std::move(report), ok ? 0 : 1};
}

struct LoadedSpace {
    FiniteSpacePtr space;
    std::string digest_source;
};

inline LoadedSpace load_space(const CommandOptions& opt) {
    if (!opt.name.empty()) {
        if (!opt.input_json.empty())
            throw InvalidValue("give either an input document or --name, not both");
        return {make_named(opt.name), "name:" + opt.name};
    }
    if (opt.input_json.empty()) throw InvalidValue("no input space given");
    Json doc = Json::parse(opt.input_json, nullptr, false);
    if (doc.is_discarded()) throw InvalidValue("input is not valid JSON");
    return {parse_space_document(doc), doc.dump()};
}

inline void enforce_cap(const CommandOptions& opt, const FiniteSpace& space) {
    if (space.size() > opt.max_points) throw TooLarge(space.size(), opt.max_points);
}

inline OpenCover load_cover(const CommandOptions& opt, const FiniteSpacePtr& space) {
    if (opt.cover_json.empty()) return finest_cover(space);
    Json doc = Json::parse(opt.cover_json, nullptr, false);
    if (doc.is_discarded()) throw InvalidValue("cover input is not valid JSON");
    return parse_cover_document(doc, space);
}

inline HomologyGroups space_mccord_homology(const FiniteSpacePtr& space, int max_degree) {
    auto k = order_complex(specialization_preorder(*space), max_degree + 1, true, false);
    return homology(normalized_chains(k, max_degree), max_degree);
}

inline HomologyGroups space_shape_homology(const FiniteSpacePtr& space, int max_degree) {
    auto n = cech_nerve(finest_cover(space), max_degree + 1, false);
    return homology(normalized_chains(n, max_degree), max_degree);
}

inline HomologyGroups space_qsh_homology(const FiniteSpacePtr& space, int max_degree) {
    auto g = gamma(mccord_hypercover(space, max_degree + 1, false), false);
    return homology(normalized_chains(g, max_degree), max_degree);
}

inline Json hyper_report_to_json(const HyperReport& r) {
    Json j;
    j["structure_ok"] = r.structure_ok;
    if (!r.structure_ok) j["structure_error"] = r.structure_error;
    j["covers_base"] = r.covers_base;
    if (!r.base_witness.empty()) j["base_witness"] = r.base_witness;
    Json levels = Json::array();
    for (const auto& l : r.levels) {
        Json lj;
        lj["degree"] = l.degree;
        lj["matching_tuples"] = l.matching_tuple_count;
        lj["matching_points"] = l.matching_point_count;
        lj["piece_points"] = l.piece_point_count;
        lj["covering"] = l.covering;
        lj["strictly_surjective"] = l.strictly_surjective;
        lj["injective"] = l.injective;
        lj["bijective"] = l.bijective;
        if (!l.witness.empty()) lj["witness"] = l.witness;
        levels.push_back(lj);
    }
    j["levels"] = levels;
    return j;
}

} // namespace detail

/// Executes one CLI command. Exit codes: 0 success, 1 verification failure,
/// 2 input error (the output is then a machine-readable error object).
inline RunResult run_command(const CommandOptions& opt) {
    using detail::Verdict;
    try {
        if (opt.command == "generate") {
            if (opt.name.empty()) throw InvalidValue("generate needs --name");
            auto space = make_named(opt.name);
            return RunResult{space_to_document(*space), 0};
        }

        if (opt.command == "validate") {
            if (opt.input_json.empty()) throw InvalidValue("no input space given");
            Json doc = Json::parse(opt.input_json, nullptr, false);
            if (doc.is_discarded()) throw InvalidValue("input is not valid JSON");
            Json report = detail::report_skeleton(opt, doc.dump());
            std::vector<Verdict> verdicts;
            try {
                auto space = parse_space_document(doc);
                report["space"] = detail::space_summary(*space);
                Json results;
                results["valid"] = true;
                Json mins = Json::object();
                for (std::uint32_t x = 0; x < space->size(); ++x)
                    mins[space->points[x]] =
                        detail::subset_to_json(space->min_open[x], space->points);
                results["min_open"] = mins;
                report["results"] = results;
                verdicts.push_back({"topology_axioms", true, true, ""});
            } catch (const NotATopology& e) {
                report["results"] = Json{{"valid", false}};
                verdicts.push_back({"topology_axioms", false, true, e.what()});
            } catch (const MissingEmptyOrFull& e) {
                report["results"] = Json{{"valid", false}};
                verdicts.push_back({"topology_axioms", false, true, e.what()});
            }
            return detail::finish_report(std::move(report), verdicts);
        }

        auto loaded = detail::load_space(opt);
        const auto& space = loaded.space;
        detail::enforce_cap(opt, *space);
        Json report = detail::report_skeleton(opt, loaded.digest_source);
        report["space"] = detail::space_summary(*space);
        std::vector<Verdict> verdicts;

        if (opt.command == "analyze") {
            Preorder pre = specialization_preorder(*space);
            Json strict = Json::array();
            for (std::uint32_t x = 0; x < pre.size(); ++x)
                for (std::uint32_t y = 0; y < pre.size(); ++y)
                    if (x != y && pre.leq(x, y))
                        strict.push_back(Json::array({pre.points[x], pre.points[y]}));

            auto comps = connected_components(space);
            Json comp_json = Json::array();
            for (const auto& b : comps.blocks)
                comp_json.push_back(detail::subset_to_json(b.set, space->points));

            auto partitions = enumerate_open_partitions(space, opt.max_points);
            bool finest_found = false;
            bool refines_all = true;
            auto key = [](const OpenPartition& p) {
                std::vector<PointSet> k;
                for (const auto& b : p.blocks) k.push_back(b.set);
                std::sort(k.begin(), k.end());
                return k;
            };
            auto comp_key = key(comps);
            for (const auto& p : partitions) {
                if (key(p) == comp_key) finest_found = true;
                if (!refines(comps.as_cover(), p.as_cover())) refines_all = false;
            }

            auto pi = pi_proset(space, opt.max_points);
            auto cv = constant_value(pi);
            bool bijects = cv.constant && cv.value.size() == comps.blocks.size();
            if (bijects) {
                std::vector<std::string> labels;
                for (const auto& b : comps.blocks) labels.push_back(b.label);
                auto sorted_value = cv.value;
                std::sort(sorted_value.begin(), sorted_value.end());
                std::sort(labels.begin(), labels.end());
                bijects = sorted_value == labels;
            }

            Json results;
            results["strict_relations"] = strict;
            results["components"] = comp_json;
            results["open_partition_count"] = partitions.size();
            results["pi_constant_value_size"] = cv.constant ? cv.value.size() : 0;
            report["results"] = results;

            verdicts.push_back({"finest_partition_enumerated", finest_found, true, ""});
            verdicts.push_back({"finest_refines_all", refines_all, true, ""});
            verdicts.push_back({"pi_isomorphic_to_constant", cv.constant, true,
                                cv.constant ? "" : "maximal antichain witness present"});
            verdicts.push_back({"pi_value_matches_components", bijects, true, ""});
            return detail::finish_report(std::move(report), verdicts);
        }

        if (opt.command == "mccord") {
            auto k = order_complex(specialization_preorder(*space), opt.max_degree + 1,
                                   true, false);
            Json results;
            results["t0_quotient_applied"] = true;
            Json cells = Json::array(), nondeg = Json::array();
            auto counts = k.nondegenerate_counts();
            for (int n = 0; n <= k.depth; ++n) {
                cells.push_back(k.cells(n));
                nondeg.push_back(counts[n]);
            }
            results["cells"] = cells;
            results["nondegenerate_cells"] = nondeg;
            results["homology"] = detail::homology_to_json(
                homology(normalized_chains(k, opt.max_degree), opt.max_degree));
            report["results"] = results;
            return detail::finish_report(std::move(report), verdicts);
        }

        if (opt.command == "nerve" || opt.command == "shape") {
            OpenCover cover = opt.command == "shape" ? finest_cover(space)
                                                     : detail::load_cover(opt, space);
            auto nv = cech_nerve(cover, opt.max_degree + 1, false);
            Json results;
            results["cover_members"] = cover.members.size();
            results["cover_source"] =
                (opt.command == "shape" || opt.cover_json.empty()) ? "finest" : "file";
            if (opt.command == "shape")
                results["note"] = "finest cover is cofinal among open covers";
            Json cells = Json::array();
            for (int n = 0; n <= nv.depth; ++n) cells.push_back(nv.cells(n));
            results["cells"] = cells;
            results["homology"] = detail::homology_to_json(
                homology(normalized_chains(nv, opt.max_degree), opt.max_degree));
            report["results"] = results;
            return detail::finish_report(std::move(report), verdicts);
        }

        if (opt.command == "qsh") {
            auto g = gamma(mccord_hypercover(space, opt.max_degree + 1, false), false);
            Json results;
            results["depth"] = opt.max_degree + 1;
            results["note"] = "levelwise component sets are plain finite sets";
            Json cells = Json::array();
            for (int n = 0; n <= g.depth; ++n) cells.push_back(g.cells(n));
            results["cells"] = cells;
            results["homology"] = detail::homology_to_json(
                homology(normalized_chains(g, opt.max_degree), opt.max_degree));
            report["results"] = results;
            return detail::finish_report(std::move(report), verdicts);
        }

        if (opt.command == "compare") {
            auto mccord_h = detail::space_mccord_homology(space, opt.max_degree);
            auto shape_h = detail::space_shape_homology(space, opt.max_degree);
            auto qsh_h = detail::space_qsh_homology(space, opt.max_degree);
            Json results;
            results["mccord"] = detail::homology_to_json(mccord_h);
            results["shape"] = detail::homology_to_json(shape_h);
            results["qsh"] = detail::homology_to_json(qsh_h);
            report["results"] = results;
            verdicts.push_back({"qsh_equals_mccord", qsh_h == mccord_h, true,
                                qsh_h == mccord_h
                                    ? ""
                                    : "qsh " + qsh_h.to_string() + " vs mccord " +
                                          mccord_h.to_string()});
            verdicts.push_back({"shape_equals_qsh", shape_h == qsh_h, false,
                                shape_h == qsh_h
                                    ? ""
                                    : "shape " + shape_h.to_string() + " vs qsh " +
                                          qsh_h.to_string()});
            return detail::finish_report(std::move(report), verdicts);
        }

        if (opt.command == "hypercheck") {
            const int depth = opt.depth > 0 ? opt.depth : opt.max_degree + 1;
            Hypercovering h;
            if (opt.kind == "cech") {
                h = cech_hypercover(detail::load_cover(opt, space), depth);
            } else if (opt.kind == "mccord") {
                h = mccord_hypercover(space, depth);
            } else {
                throw InvalidValue("hypercheck --kind must be cech or mccord");
            }
            auto hr = verify_hyper(h);
            Json results;
            results["kind"] = opt.kind;
            results["depth"] = depth;
            results["report"] = detail::hyper_report_to_json(hr);
            Json pieces = Json::array();
            for (int n = 0; n <= h.depth; ++n) pieces.push_back(h.pieces(n));
            results["pieces"] = pieces;
            report["results"] = results;
            verdicts.push_back({"structure", hr.structure_ok, true, hr.structure_error});
            verdicts.push_back({"covers_base", hr.covers_base, true, hr.base_witness});
            bool covering = hr.all_covering();
            std::string witness;
            for (const auto& l : hr.levels)
                if (!l.covering && witness.empty()) witness = l.witness;
            verdicts.push_back({"matching_objects_covered", covering, true, witness});
            verdicts.push_back({"levels_bijective", hr.all_bijective(), false, ""});
            return detail::finish_report(std::move(report), verdicts);
        }

        throw InvalidValue("unknown command '" + opt.command + "'");
    } catch (const Error& e) {
        Json err;
        err["format_version"] = kFormatVersion;
        err["status"] = "error";
        err["error"] = Json{{"kind", e.kind()}, {"message", e.what()}};
        return RunResult{std::move(err), 2};
    }
}

} // namespace protoshape
