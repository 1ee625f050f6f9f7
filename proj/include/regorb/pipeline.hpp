#pragma once

#include "regorb/certify.hpp"
#include "regorb/io.hpp"
#include "regorb/orbits.hpp"
#include "regorb/spectral.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace regorb {

enum class Mode { certify, exact, auto_ };
enum class ReportFormat { structured, text };

struct JobSpec {
    std::string input;
    Mode mode = Mode::auto_;
    std::uint64_t max_group = kDefaultGroupCap;
    std::uint64_t max_space = kDefaultSpaceCap;
    ReportFormat format = ReportFormat::structured;
    std::optional<std::string> classes;
    std::optional<std::string> alphas;
    unsigned threads = 1;
    std::optional<std::string> field_db;
    bool timing = false;
};

inline Mode parse_mode(const std::string& s) {
    if (s == "certify") return Mode::certify;
    if (s == "exact") return Mode::exact;
    if (s == "auto") return Mode::auto_;
    throw Error(ErrorKind::InvalidArgument, "unknown mode '" + s + "'");
}

inline const char* to_string(Mode m) {
    switch (m) {
    case Mode::certify: return "certify";
    case Mode::exact: return "exact";
    case Mode::auto_: return "auto";
    }
    return "?";
}

struct RunResult {
    nlohmann::json report;
    int exit_code = 0;
};

/// Exit code for runs whose only outcome is an inconclusive certificate.
inline constexpr int kInconclusiveExit = 2;

namespace detail {

/// Class labels: projective order followed by a letter, classes ordered by size then by first occurrence.
inline std::vector<ClassEntry> enumerated_classes(const GroupEnumeration& G) {
    auto data = prime_projective_classes(G);
    std::vector<std::size_t> order(data.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (data[a].proj_order != data[b].proj_order) return data[a].proj_order < data[b].proj_order;
        return data[a].class_size < data[b].class_size;
    });
    std::map<std::uint64_t, int> next_letter;
    std::vector<ClassEntry> out;
    for (auto i : order) {
        const auto& cd = data[i];
        ClassEntry c;
        int n = next_letter[cd.proj_order]++;
        std::string suffix;
        do {
            suffix.insert(suffix.begin(), static_cast<char>('a' + n % 26));
            n = n / 26 - 1;
        } while (n >= 0);
        c.label = std::to_string(cd.proj_order) + suffix;
        c.class_size = cd.class_size;
        c.proj_order = cd.proj_order;
        c.unipotent = cd.unipotent;
        std::map<std::uint64_t, std::uint32_t> prof;
        for (auto [k, dim] : twist_profile(cd.rep)) prof[k] = dim;
        c.evidence.profile = std::move(prof);
        c.evidence.emax = eigen_profile(cd.rep).emax;
        out.push_back(std::move(c));
    }
    return out;
}

inline nlohmann::json vector_json(const std::vector<Elt>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (auto x : v) a.push_back(x);
    return a;
}

inline nlohmann::json verdict_json(const Verdict& v) {
    nlohmann::json j;
    j["strategy"] = to_string(v.used);
    j["lhs"] = v.lhs.str();
    j["rhs_num"] = BigInt(boost::multiprecision::numerator(v.rhs)).str();
    j["rhs_den"] = BigInt(boost::multiprecision::denominator(v.rhs)).str();
    j["outcome"] = v.certified() ? "Certified" : "Inconclusive";
    if (!v.degraded.empty()) j["cap_form_classes"] = v.degraded;
    return j;
}

} // namespace detail

/**
 * @brief Runs one job: enumerate when needed, certify and/or compute the
 * exact base size, and assemble the structured report.
 */
inline RunResult run(const JobSpec& job) {
    using nlohmann::json;
    using Clock = std::chrono::steady_clock;
    const auto t0 = Clock::now();
    if (job.max_group < 1 || job.max_space < 1) throw Error(ErrorKind::InvalidArgument, "caps must be positive");

    std::optional<FieldDb> db;
    if (job.field_db) db = FieldDb::load(*job.field_db);
    else db = FieldDb::from_env();
    GroupInput in = parse_input_file(job.input, db ? &*db : nullptr);
    const FieldPtr& F = in.field;
    const std::uint64_t r = F->q();
    const std::uint32_t d = in.dim;

    json rep;
    json prov = json::object();
    json notes = json::array();
    rep["group_label"] = in.label;
    json fj;
    fj["p"] = F->p();
    fj["k"] = F->k();
    fj["defpoly"] = F->defpoly();
    rep["field"] = fj;
    rep["dim"] = d;
    rep["mode"] = to_string(job.mode);
    rep["caps"] = {{"max_group", job.max_group}, {"max_space", job.max_space}};
    rep["certificates"] = json::array();

    std::optional<GroupEnumeration> G;
    std::optional<BigInt> order = in.declared_order;
    if (order) prov["group_order"] = "user-supplied";

    auto enumerate = [&]() -> const GroupEnumeration& {
        if (!G) {
            G = GroupEnumeration::enumerate(in.all_generators(), job.max_group, F, d);
            if (order && *order != G->order())
                throw Error(ErrorKind::InvalidArgument, "declared order " + order->str() + " differs from enumerated " +
                                                            G->order().str());
            order = G->order();
            prov["group_order"] = "enumerated";
        }
        return *G;
    };
    const BigInt vsize = ipow(r, d);
    auto space_ok = [&] { return vsize <= BigInt(job.max_space); };

    std::optional<std::vector<ClassEntry>> user_classes;
    if (job.classes) user_classes = parse_classes_file(*job.classes);
    std::map<std::string, AlphaOverride> alphas;
    if (job.alphas) alphas = parse_alphas_file(*job.alphas);

    if (!order) enumerate();
    rep["group_order"] = order->str();
    const std::uint64_t lower = b_lower(*order, r, d);
    rep["b_lower"] = lower;
    prov["b_lower"] = prov["group_order"];

    std::optional<std::uint64_t> b_exact;
    std::optional<std::vector<Elt>> witness;
    std::optional<BaseResult> base;
    std::string outcome = "inconclusive";

    auto set_witness = [&](const GroupEnumeration& g) {
        witness = regular_orbit_search(g, job.max_space, job.threads);
        if (witness) prov["regular_witness"] = "enumerated";
    };

    if (*order == 1) {
        b_exact = 0;
        witness = std::vector<Elt>(d, 0);
        prov["b_exact"] = "trivial group";
        prov["regular_witness"] = "trivial group";
        outcome = "exact";
    } else {
        bool certified = false;
        if (job.mode == Mode::certify || job.mode == Mode::auto_) {
            std::vector<ClassEntry> classes;
            bool have_classes = false;
            if (user_classes) {
                classes = *user_classes;
                have_classes = true;
                prov["classes"] = "user-supplied";
            } else if (job.mode == Mode::certify) {
                classes = detail::enumerated_classes(enumerate());
                have_classes = true;
                prov["classes"] = "enumerated";
            } else if (*order > vsize) {
                notes.push_back("certificate skipped: |G| > |V| so no regular orbit is possible");
            } else {
                try {
                    classes = detail::enumerated_classes(enumerate());
                    have_classes = true;
                    prov["classes"] = "enumerated";
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::CapExceeded) throw;
                    notes.push_back("certificate skipped: group exceeds the enumeration cap and no class data was given");
                }
            }
            if (have_classes) {
                for (auto& c : classes) {
                    auto it = alphas.find(c.label);
                    if (it == alphas.end()) continue;
                    c.evidence.alpha = it->second.alpha;
                    prov["alpha:" + c.label] = "user-supplied: " + it->second.source;
                }
                CertificateInput ci{r, d, classes, order};
                for (const auto& v : check_all(ci)) rep["certificates"].push_back(detail::verdict_json(v));
                Verdict best = check(ci, Strategy::best);
                rep["certificate"] = detail::verdict_json(best);
                if (best.certified()) {
                    certified = true;
                    b_exact = 1;
                    prov["b_exact"] = "certificate";
                    outcome = "certified";
                } else {
                    notes.push_back("Inconclusive: the inequality holds, which does not imply that no regular orbit exists");
                }
            }
        }
        if (certified && job.mode == Mode::auto_ && G && space_ok()) set_witness(*G);
        const bool run_exact = job.mode == Mode::exact || (job.mode == Mode::auto_ && !certified);
        if (run_exact) {
            const bool no_gens = in.all_generators().empty();
            if (job.mode == Mode::exact) {
                if (!space_ok())
                    throw Error(ErrorKind::SpaceCapExceeded, "|V| = " + vsize.str() + " exceeds the space cap");
                if (no_gens) throw Error(ErrorKind::InvalidArgument, "exact mode needs generators");
                enumerate();
            } else if (!space_ok()) {
                notes.push_back("exact computation skipped: |V| exceeds the space cap");
            } else if (no_gens) {
                notes.push_back("exact computation skipped: no generators were given");
            } else if (!G) {
                try {
                    enumerate();
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::CapExceeded) throw;
                    notes.push_back("exact computation skipped: group exceeds the enumeration cap");
                }
            }
            if (G && space_ok()) {
                base = base_size_exact(*G, job.max_space);
                b_exact = base->size;
                prov["b_exact"] = "enumerated";
                outcome = "exact";
                if (*b_exact == 1) set_witness(*G);
            }
        }
    }

    if (b_exact) rep["b_exact"] = *b_exact;
    if (witness) rep["regular_witness"] = detail::vector_json(*witness);
    if (base) {
        json bj = json::array();
        for (const auto& v : base->base) bj.push_back(detail::vector_json(v));
        rep["base"] = bj;
    }
    rep["outcome"] = outcome;
    rep["provenance"] = prov;
    rep["notes"] = notes;
    if (job.timing)
        rep["timing"] = {{"seconds", std::chrono::duration<double>(Clock::now() - t0).count()}};

    RunResult res;
    res.report = std::move(rep);
    res.exit_code = b_exact ? 0 : kInconclusiveExit;
    return res;
}

/// Human-readable rendering of a structured report.
inline std::string render_text(const nlohmann::json& rep) {
    std::ostringstream out;
    const auto& f = rep["field"];
    out << "group        " << rep["group_label"].get<std::string>() << "\n";
    out << "module       V" << rep["dim"].get<std::uint64_t>() << "(" << f["p"].get<std::uint64_t>();
    if (f["k"].get<std::uint64_t>() > 1) out << "^" << f["k"].get<std::uint64_t>();
    out << ")\n";
    out << "|G|          " << rep["group_order"].get<std::string>() << "  ["
        << rep["provenance"].value("group_order", std::string("?")) << "]\n";
    out << "b_lower      " << rep["b_lower"].get<std::uint64_t>() << "\n";
    if (rep.contains("b_exact"))
        out << "b_exact      " << rep["b_exact"].get<std::uint64_t>() << "  ["
            << rep["provenance"].value("b_exact", std::string("?")) << "]\n";
    if (rep.contains("regular_witness")) {
        out << "witness      (";
        bool first = true;
        for (const auto& x : rep["regular_witness"]) {
            out << (first ? "" : ",") << x.get<std::uint64_t>();
            first = false;
        }
        out << ")\n";
    }
    for (const auto& c : rep["certificates"]) {
        out << "strategy " << c["strategy"].get<std::string>() << "  " << c["outcome"].get<std::string>() << "  |V| = "
            << c["lhs"].get<std::string>() << "  rhs = " << c["rhs_num"].get<std::string>();
        if (c["rhs_den"].get<std::string>() != "1") out << "/" << c["rhs_den"].get<std::string>();
        out << "\n";
    }
    out << "outcome      " << rep["outcome"].get<std::string>() << "\n";
    for (const auto& n : rep["notes"]) out << "note: " << n.get<std::string>() << "\n";
    if (rep.contains("timing")) out << "time         " << rep["timing"]["seconds"].get<double>() << " s\n";
    return out.str();
}

inline std::string render(const RunResult& r, ReportFormat f) {
    if (f == ReportFormat::text) return render_text(r.report);
    return r.report.dump(2) + "\n";
}

} // namespace regorb
