#include "feasex.hpp"

#include <json.hpp>

#include <algorithm>
#include <utility>

#include "error.hpp"
#include "simplex.hpp"
#include "witness_check.hpp"

namespace apfree {

namespace {

// max sum x  s.t.  A[:, cols] x = 0, x + s = 1, x >= 0, s >= 0.
// All-zero rows of the column-restricted matrix are dropped; that changes
// nothing about the feasible set.
std::pair<Rat, std::vector<Rat>> box_lp(const RatMatrix& a,
                                        const std::vector<std::size_t>& cols) {
    const std::size_t ns = cols.size();
    std::vector<std::vector<const Rat*>> live_rows;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        bool nonzero = false;
        for (std::size_t c : cols)
            if (a.at(r, c) != 0) {
                nonzero = true;
                break;
            }
        if (nonzero) {
            std::vector<const Rat*> row(ns);
            for (std::size_t i = 0; i < ns; ++i)
                row[i] = &a.at(r, cols[i]);
            live_rows.push_back(std::move(row));
        }
    }
    const std::size_t mr = live_rows.size();

    RatMatrix e(mr + ns, 2 * ns);
    std::vector<Rat> b(mr + ns, Rat(0));
    std::vector<Rat> c(2 * ns, Rat(0));
    for (std::size_t r = 0; r < mr; ++r)
        for (std::size_t j = 0; j < ns; ++j)
            e.at(r, j) = *live_rows[r][j];
    for (std::size_t j = 0; j < ns; ++j) {
        e.at(mr + j, j) = 1;
        e.at(mr + j, ns + j) = 1;
        b[mr + j] = 1;
        c[j] = 1;
    }

    LpSolution sol = simplex_max(e, b, c);
    if (sol.status != LpStatus::optimal)
        throw Error(ErrorCode::internal, "box program must be feasible and bounded");
    sol.x.resize(ns);
    return {std::move(sol.objective), std::move(sol.x)};
}

// Clears denominators, divides by the gcd, scatters into full column space,
// and re-checks every witness invariant against the full matrix.
std::vector<Int> integerize(const RatMatrix& a, const std::vector<std::size_t>& cols,
                            const std::vector<Rat>& x) {
    Int l = 1;
    for (const Rat& v : x)
        l = lcm(l, Int(v.get_den()));
    std::vector<Int> w(a.cols(), 0);
    Int g = 0;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        Int num = Int(x[i].get_num()) * (l / Int(x[i].get_den()));
        w[cols[i]] = num;
        g = gcd(g, num);
    }
    if (g == 0)
        throw Error(ErrorCode::internal, "attempted to integerize a zero LP point");
    for (Int& v : w)
        v /= g;

    for (std::size_t r = 0; r < a.rows(); ++r) {
        Rat acc = 0;
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (w[c] != 0 && a.at(r, c) != 0)
                acc += a.at(r, c) * Rat(w[c]);
        if (acc != 0)
            throw Error(ErrorCode::internal, "extracted witness violates Ax = 0");
    }
    for (const Int& v : w)
        if (v < 0)
            throw Error(ErrorCode::internal, "extracted witness has a negative entry");
    return w;
}

void validate_witness(const ConstraintSystem& system, const std::vector<Int>& w) {
    if (w.size() != system.matrix.cols())
        throw Error(ErrorCode::invalid_argument, "witness length does not match system");
    Int g = 0;
    bool nonzero = false;
    for (const Int& v : w) {
        if (v < 0)
            throw Error(ErrorCode::invalid_argument, "witness entries must be nonnegative");
        nonzero = nonzero || v != 0;
        g = gcd(g, v);
    }
    if (!nonzero)
        throw Error(ErrorCode::invalid_argument, "witness must be nonzero");
    if (g != 1)
        throw Error(ErrorCode::invalid_argument, "witness entries must have gcd 1");
    for (std::size_t r = 0; r < system.matrix.rows(); ++r) {
        Rat acc = 0;
        for (std::size_t c = 0; c < system.matrix.cols(); ++c)
            if (w[c] != 0 && system.matrix.at(r, c) != 0)
                acc += system.matrix.at(r, c) * Rat(w[c]);
        if (acc != 0)
            throw Error(ErrorCode::invalid_argument, "witness does not satisfy Ax = 0");
    }
}

}  // namespace

FeasibilityResult decide_cone(const ConstraintSystem& system) {
    FeasibilityResult res;
    res.lp_optimum = 0;
    if (system.matrix.cols() == 0)
        return res;

    // Variables hit by a sign-consistent row are zero throughout the cone.
    ReductionTrace presolve = reduce(system, InitialMatrix::a);
    if (presolve.outcome == ReduceOutcome::reduced)
        return res;

    auto [optimum, x] = box_lp(system.matrix, presolve.surviving_columns);
    res.lp_optimum = std::move(optimum);
    if (res.lp_optimum == 0)
        return res;
    res.trivial = false;
    res.witness = integerize(system.matrix, presolve.surviving_columns, x);
    return res;
}

std::vector<Int> minimize_witness(const ConstraintSystem& system,
                                  const std::vector<Int>& witness) {
    validate_witness(system, witness);
    std::vector<Int> current = witness;
    std::vector<std::size_t> order;
    for (std::size_t c = 0; c < current.size(); ++c)
        if (current[c] > 0)
            order.push_back(c);

    for (std::size_t j : order) {
        if (current[j] == 0)
            continue;
        std::vector<std::size_t> cols;
        for (std::size_t c = 0; c < current.size(); ++c)
            if (current[c] > 0 && c != j)
                cols.push_back(c);
        if (cols.empty())
            continue;
        auto [optimum, x] = box_lp(system.matrix, cols);
        if (optimum > 0)
            current = integerize(system.matrix, cols, x);
    }
    return current;
}

ExpandedWitness expand_witness(const ConstraintSystem& system,
                               const std::vector<Int>& witness) {
    validate_witness(system, witness);

    Int total = 0;
    for (const Int& v : witness)
        total += v;
    if (total > 1000000)
        throw Error(ErrorCode::cap_exceeded,
                    "witness weight " + total.get_str() + " exceeds the expansion cap");

    const uint32_t m = system.digit_set.m();
    const uint32_t k = system.k;
    const auto& digits = system.digit_set.digits();

    ExpandedWitness ew;
    ew.vectors.assign(k, {});
    for (std::size_t c = 0; c < witness.size(); ++c) {
        const unsigned long cnt = witness[c].get_ui();
        const Progression& p = system.progressions[c];
        for (unsigned long t = 0; t < cnt; ++t) {
            for (uint32_t i = 0; i < k; ++i)
                ew.vectors[i].push_back(p.terms[i]);
            ew.diff.push_back(p.diff);
        }
    }

    // digit counts in the first vector; Ax = 0 makes them equal in all k
    std::vector<uint64_t> count(m, 0);
    for (uint32_t v : ew.vectors[0])
        ++count[v];
    uint64_t max_count = 0;
    for (uint32_t d : digits)
        max_count = std::max(max_count, count[d]);
    for (uint32_t d : digits)
        for (uint64_t t = count[d]; t < max_count; ++t) {
            for (uint32_t i = 0; i < k; ++i)
                ew.vectors[i].push_back(d);
            ew.diff.push_back(0);
        }
    ew.n = static_cast<uint64_t>(digits.size()) * max_count;

    for (const auto& vec : ew.vectors) {
        if (vec.size() != ew.n)
            throw Error(ErrorCode::internal, "expanded witness has wrong dimension");
        std::vector<uint64_t> c2(m, 0);
        for (uint32_t v : vec)
            ++c2[v];
        for (uint32_t d : digits)
            if (c2[d] != max_count)
                throw Error(ErrorCode::internal, "expanded witness is not balanced");
    }
    return ew;
}

const char* certificate_kind_name(CertificateKind kind) {
    switch (kind) {
        case CertificateKind::reduction_a: return "reduce-A";
        case CertificateKind::reduction_rref: return "reduce-RREF";
        case CertificateKind::reduction_custom: return "reduce-CUSTOM";
        case CertificateKind::lp_trivial: return "lp-trivial";
        case CertificateKind::witness: return "lp-witness";
    }
    return "?";
}

CheckResult check_admissible(const DigitSet& d, uint32_t k, const CheckOptions& opts) {
    ConstraintSystem system = build_system(d, k, opts.scheme);
    CheckResult out;

    if (opts.method != CheckOptions::Method::lp_only) {
        std::vector<InitialMatrix> initials;
        if (opts.initial)
            initials = {*opts.initial};
        else
            initials = {InitialMatrix::a, InitialMatrix::rref_form};
        for (InitialMatrix init : initials) {
            const RatMatrix* t = init == InitialMatrix::custom ? opts.custom_t : nullptr;
            ReductionTrace tr = reduce(system, init, t);
            const bool done = tr.outcome == ReduceOutcome::reduced;
            switch (init) {
                case InitialMatrix::a:
                    out.certificate.kind = CertificateKind::reduction_a;
                    break;
                case InitialMatrix::rref_form:
                    out.certificate.kind = CertificateKind::reduction_rref;
                    break;
                case InitialMatrix::custom:
                    out.certificate.kind = CertificateKind::reduction_custom;
                    break;
            }
            out.certificate.trace = std::move(tr);
            if (done) {
                out.verdict = Verdict::admissible;
                return out;
            }
        }
        if (opts.method == CheckOptions::Method::reduce_only) {
            out.verdict = Verdict::undetermined;  // stuck trace stays attached
            return out;
        }
    }

    FeasibilityResult fr = decide_cone(system);
    out.certificate.trace.reset();
    out.certificate.lp_optimum = fr.lp_optimum;
    if (fr.trivial) {
        out.verdict = Verdict::admissible;
        out.certificate.kind = CertificateKind::lp_trivial;
        out.certificate.rank = rref(system.matrix).second;
        return out;
    }

    out.verdict = Verdict::not_admissible;
    out.certificate.kind = CertificateKind::witness;
    std::vector<Int> w = std::move(*fr.witness);
    if (opts.minimize_witness)
        w = minimize_witness(system, w);
    if (opts.expand_witnesses) {
        ExpandedWitness ew = expand_witness(system, w);
        if (!verify_expanded_witness(d.m(), d.digits(), k, ew))
            throw Error(ErrorCode::internal,
                        "expanded witness failed independent verification");
        out.certificate.expanded = std::move(ew);
    }
    out.certificate.witness = std::move(w);
    return out;
}

std::string witness_json(const ConstraintSystem& system, const std::vector<Int>& witness,
                         const std::optional<ExpandedWitness>& expanded) {
    nlohmann::json j;
    j["digits"] = system.digit_set.digits();
    j["m"] = system.digit_set.m();
    j["k"] = system.k;
    nlohmann::json x = nlohmann::json::object();
    for (std::size_t c = 0; c < witness.size(); ++c) {
        if (witness[c] == 0)
            continue;
        const Progression& p = system.progressions[c];
        const std::string key = std::to_string(p.start) + "," + std::to_string(p.diff);
        if (witness[c].fits_ulong_p())
            x[key] = witness[c].get_ui();
        else
            x[key] = witness[c].get_str();
    }
    j["x"] = std::move(x);
    if (expanded) {
        j["n"] = expanded->n;
        j["vectors"] = expanded->vectors;
    }
    return j.dump();
}

std::string check_report_json(const DigitSet& d, uint32_t k, const CheckResult& result) {
    nlohmann::json j;
    j["m"] = d.m();
    j["k"] = k;
    j["digits"] = d.digits();
    switch (result.verdict) {
        case Verdict::admissible: j["verdict"] = "admissible"; break;
        case Verdict::not_admissible: j["verdict"] = "not-admissible"; break;
        case Verdict::undetermined: j["verdict"] = "undetermined"; break;
    }
    j["method"] = certificate_kind_name(result.certificate.kind);
    nlohmann::json cert = nlohmann::json::object();
    if (result.certificate.trace) {
        const ReductionTrace& tr = *result.certificate.trace;
        cert["initial"] = tr.initial == InitialMatrix::a       ? "A"
                          : tr.initial == InitialMatrix::rref_form ? "RREF"
                                                                   : "CUSTOM";
        cert["steps"] = tr.steps.size();
        cert["outcome"] = tr.outcome == ReduceOutcome::reduced ? "REDUCED" : "STUCK";
    }
    if (result.certificate.lp_optimum)
        cert["lp_optimum"] = rat_to_string(*result.certificate.lp_optimum);
    if (result.certificate.rank)
        cert["rank"] = *result.certificate.rank;
    if (result.certificate.witness) {
        Int weight = 0;
        std::size_t support = 0;
        for (const Int& v : *result.certificate.witness) {
            weight += v;
            if (v != 0)
                ++support;
        }
        cert["witness_weight"] = weight.get_str();
        cert["witness_support"] = support;
    }
    if (result.certificate.expanded)
        cert["n"] = result.certificate.expanded->n;
    j["certificate"] = std::move(cert);
    return j.dump();
}

}  // namespace apfree
