/**
 * @file json_io.hpp
 * @brief JSON serialization for rings, derivations, divisors, reports and
 *        certificates, plus certificate re-verification for the CLI.
 *
 * JSON is the single structured format. Output is deterministic: object
 * keys are sorted, rationals are canonical "p/q" strings, polynomials use
 * the input grammar. Problem files reject unknown keys.
 */
#ifndef CYLFORGE_JSON_IO_HH
#define CYLFORGE_JSON_IO_HH

#include <json.hpp>

#include <random>

#include <cylforge/cylinder.hpp>
#include <cylforge/derivation.hpp>
#include <cylforge/qdivisor.hpp>
#include <cylforge/subalgebra.hpp>

namespace cylforge {

    using Json = nlohmann::json;

    // ------------------------------------------------------------------
    // Core values
    // ------------------------------------------------------------------

    inline Json ring_to_json(const RingPtr& r) {
        Json j;
        j["variables"] = r->variables();
        j["weights"] = r->weights();
        return j;
    }

    inline Json domain_to_json(const GradedDomain& a) {
        Json j = ring_to_json(a.ring());
        Json rels = Json::array();
        for (auto& r : a.relations()) rels.push_back(r.str());
        j["relations"] = rels;
        return j;
    }

    inline void reject_unknown_keys(const Json& j, const std::vector<std::string>& allowed,
                                    const std::string& where) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
                throw input_error("unknown key '" + it.key() + "' in " + where);
        }
    }

    inline GradedDomainPtr domain_from_json(const Json& j) {
        if (!j.is_object()) throw input_error("ring description must be an object");
        reject_unknown_keys(j, {"variables", "weights", "relations"}, "ring description");
        if (!j.contains("variables") || !j.contains("weights"))
            throw input_error("ring description needs 'variables' and 'weights'");
        std::vector<std::string> vars = j.at("variables").get<std::vector<std::string>>();
        std::vector<long> weights = j.at("weights").get<std::vector<long>>();
        auto ring = Ring::make(vars, weights);
        std::vector<Poly> rels;
        if (j.contains("relations"))
            for (auto& s : j.at("relations"))
                rels.push_back(parse_poly(s.get<std::string>(), ring));
        return GradedDomain::make(ring, rels);
    }

    inline Json derivation_to_json(const Derivation& d) {
        Json j;
        for (std::size_t i = 0; i < d.ring()->nvars(); ++i)
            j[d.ring()->var_name(i)] = d.images()[i].str();
        return j;
    }

    inline Derivation derivation_from_json(const Json& j, const GradedDomainPtr& a) {
        if (!j.is_object()) throw input_error("derivation description must be an object");
        std::vector<Poly> images(a->nvars(), Poly(a->ring()));
        for (auto it = j.begin(); it != j.end(); ++it) {
            long idx = a->ring()->var_index(it.key());
            if (idx < 0)
                throw input_error("derivation image for unknown variable '" + it.key() + "'");
            images[idx] = parse_poly(it.value().get<std::string>(), a->ring());
        }
        return Derivation(a, images);
    }

    inline Json divisor_to_json(const QDivisor& d) {
        Json points = Json::array(), coeffs = Json::array();
        for (auto& [p, c] : d.terms()) {
            points.push_back(p.str());
            coeffs.push_back(to_string(c));
        }
        Json j;
        j["points"] = points;
        j["coeffs"] = coeffs;
        return j;
    }

    inline QDivisor divisor_from_json(const Json& j) {
        if (!j.is_object()) throw input_error("divisor description must be an object");
        reject_unknown_keys(j, {"points", "coeffs"}, "divisor description");
        if (!j.contains("points") || !j.contains("coeffs"))
            throw input_error("divisor description needs 'points' and 'coeffs'");
        auto points = j.at("points");
        auto coeffs = j.at("coeffs");
        if (points.size() != coeffs.size())
            throw input_error("points/coeffs length mismatch");
        QDivisor d;
        for (std::size_t i = 0; i < points.size(); ++i)
            d.add(PointP1::parse(points[i].get<std::string>()),
                  parse_rational(coeffs[i].get<std::string>()));
        return d;
    }

    // ------------------------------------------------------------------
    // Problem files
    // ------------------------------------------------------------------

    struct ProblemFile {
        GradedDomainPtr domain;
        std::optional<Derivation> derivation;
        long degree_bound = 60;
        long nilpotency_cap = 200;
        long verified_degree = 40;
    };

    inline ProblemFile problem_from_json(const Json& j) {
        if (!j.is_object()) throw input_error("problem file must be a JSON object");
        reject_unknown_keys(j, {"ring", "derivation", "degree_bound", "nilpotency_cap",
                                "verified_degree"},
                            "problem file");
        if (!j.contains("ring")) throw input_error("problem file needs a 'ring'");
        ProblemFile p;
        p.domain = domain_from_json(j.at("ring"));
        if (j.contains("derivation"))
            p.derivation = derivation_from_json(j.at("derivation"), p.domain);
        if (j.contains("degree_bound")) p.degree_bound = j.at("degree_bound").get<long>();
        if (j.contains("nilpotency_cap")) p.nilpotency_cap = j.at("nilpotency_cap").get<long>();
        if (j.contains("verified_degree"))
            p.verified_degree = j.at("verified_degree").get<long>();
        return p;
    }

    // ------------------------------------------------------------------
    // Reports
    // ------------------------------------------------------------------

    inline Json validation_to_json(const ValidationReport& r) {
        Json j;
        j["valid"] = r.valid;
        j["saturation_index"] = r.saturation_index;
        j["errors"] = r.errors;
        j["warnings"] = r.warnings;
        return j;
    }

    inline Json verdict_to_json(const NilpotencyVerdict& v) {
        Json j;
        j["status"] = to_string(v.status);
        j["reason"] = to_string(v.reason);
        if (!v.vanishing_steps.empty()) j["vanishing_steps"] = v.vanishing_steps;
        if (!v.witness.empty()) j["witness"] = v.witness;
        return j;
    }

    inline Json kernel_index_to_json(const KernelIndexReport& r) {
        Json j;
        j["index"] = r.index;
        j["certified"] = r.certified;
        j["coprime_with_degree"] = r.coprime_with_degree;
        j["bound"] = r.bound;
        j["degrees"] = r.degrees;
        return j;
    }

    inline Json membership_to_json(const Membership& m) {
        Json j;
        j["status"] = to_string(m.status);
        if (m.status == Membership::Status::yes) {
            Json expr = Json::array();
            for (auto& [c, e] : m.expression) {
                Json t;
                t["coeff"] = to_string(c);
                t["exponents"] = e;
                expr.push_back(t);
            }
            j["expression"] = expr;
        }
        if (m.witness) j["witness"] = m.witness->str();
        return j;
    }

    inline Json veronese_to_json(const VeroneseReport& r, const GradedDomain& a) {
        Json j;
        j["kind"] = "veronese";
        j["ring"] = domain_to_json(a);
        j["d"] = r.d;
        Json gens = Json::array();
        for (auto& [g, deg] : r.generators) {
            Json t;
            t["element"] = g.str();
            t["degree"] = deg;
            gens.push_back(t);
        }
        j["generators"] = gens;
        Json rels = Json::array();
        for (auto& rel : r.relations) rels.push_back(rel.str());
        j["relations"] = rels;
        j["generator_weights"] = r.generator_ring->weights();
        j["generation_bound"] = r.generation_bound;
        j["verified_up_to"] = r.verified_up_to;
        j["generation_certified"] = r.generation_certified;
        return j;
    }

    inline Json spectrum_to_json(const SpectrumReport& r) {
        Json j;
        j["kind"] = "spectrum";
        j["divisor"] = divisor_to_json(r.h);
        j["max_numerator"] = r.max_numerator;
        j["max_denominator"] = r.max_denominator;
        Json mem = Json::array();
        for (auto& w : r.members) {
            Json t;
            t["r"] = to_string(w.r);
            t["point"] = w.point.str();
            t["witness_divisor"] = divisor_to_json(w.d);
            mem.push_back(t);
        }
        j["members"] = mem;
        Json prim = Json::array();
        for (auto& p : r.primitive_members) prim.push_back(to_string(p));
        j["primitive_members"] = prim;
        j["dense"] = r.dense;
        Json dp = Json::array();
        for (auto& p : r.dense_points) dp.push_back(p.str());
        j["dense_points"] = dp;
        return j;
    }

    // ------------------------------------------------------------------
    // Certificates
    // ------------------------------------------------------------------

    inline Json slice_to_json(const SliceCertificate& c) {
        Json j;
        j["kind"] = "slice";
        j["ring"] = domain_to_json(*c.domain);
        j["derivation"] = derivation_to_json(c.der);
        j["g"] = c.g.str();
        j["h"] = c.h.str();
        j["slice"] = c.slice_str();
        Json kg = Json::array();
        for (auto& [p, deg] : c.kernel_generators) {
            Json t;
            t["element"] = p.str();
            t["degree"] = deg;
            kg.push_back(t);
        }
        j["kernel_generators"] = kg;
        j["verified_degree"] = c.verified_degree;
        return j;
    }

    inline SliceCertificate slice_from_json(const Json& j) {
        SliceCertificate c;
        c.domain = domain_from_json(j.at("ring"));
        c.der = derivation_from_json(j.at("derivation"), c.domain);
        c.g = parse_poly(j.at("g").get<std::string>(), c.domain->ring());
        c.h = parse_poly(j.at("h").get<std::string>(), c.domain->ring());
        for (auto& t : j.at("kernel_generators"))
            c.kernel_generators.emplace_back(
                parse_poly(t.at("element").get<std::string>(), c.domain->ring()),
                t.at("degree").get<long>());
        c.verified_degree = j.at("verified_degree").get<long>();
        return c;
    }

    inline Json cyclic_to_json(const CyclicQuotientData& q) {
        Json j;
        j["kind"] = "cyclic-quotient";
        j["ring"] = domain_to_json(*q.domain);
        j["derivation"] = derivation_to_json(q.der);
        j["h"] = q.h.str();
        j["m"] = q.m;
        j["residue_labels"] = q.residue_labels;
        j["fiber_status"] = to_string(q.fiber.status);
        j["fiber_detail"] = q.fiber.detail;
        j["n"] = q.n;
        j["k"] = q.k;
        j["kernel_index"] = q.kernel_index;
        j["lemma_consistent"] = q.lemma_consistent;
        j["plain_reading_n"] = q.plain_reading_n;
        j["reading_disagreement"] = q.reading_disagreement;
        Json ig = Json::array();
        for (auto& [p, lvl] : q.invariant_generators) {
            Json t;
            t["element"] = p.str();
            t["level"] = lvl;
            ig.push_back(t);
        }
        j["invariant_generators"] = ig;
        j["verified_degree"] = q.verified_degree;
        j["injective_on_pieces"] = q.injective_on_pieces;
        return j;
    }

    inline Json polar_to_json(const PolarCylinderCertificate& c) {
        Json j;
        j["kind"] = "polar-cylinder";
        j["ring"] = domain_to_json(*c.domain);
        j["derivation"] = derivation_to_json(c.der);
        j["g"] = c.g.str();
        j["h"] = c.h.str();
        j["h_power"] = c.hpow;
        j["t"] = c.t.str();
        j["f"] = c.f.str();
        j["m"] = c.m;
        j["d"] = c.d;
        j["k"] = c.k;
        j["r"] = c.r;
        j["alpha"] = c.alpha;
        Json s1;
        s1["numerator"] = c.s1.num.str();
        s1["level"] = c.s1.level;
        j["s1"] = s1;
        Json cg = Json::array();
        for (auto& [p, lvl] : c.coordinate_generators) {
            Json t;
            t["element"] = p.str();
            t["level"] = lvl;
            cg.push_back(t);
        }
        j["coordinate_generators"] = cg;
        j["verified_degree"] = c.verified_degree;
        j["piece_dims"] = c.piece_dims;
        j["quotient_n"] = c.quotient.n;
        j["quotient_k"] = c.quotient.k;
        return j;
    }

    inline PolarCylinderCertificate polar_from_json(const Json& j) {
        PolarCylinderCertificate c;
        c.domain = domain_from_json(j.at("ring"));
        auto ring = c.domain->ring();
        c.der = derivation_from_json(j.at("derivation"), c.domain);
        c.g = parse_poly(j.at("g").get<std::string>(), ring);
        c.h = parse_poly(j.at("h").get<std::string>(), ring);
        c.hpow = j.value("h_power", 1L);
        c.t = parse_poly(j.at("t").get<std::string>(), ring);
        c.f = parse_poly(j.at("f").get<std::string>(), ring);
        c.m = j.at("m").get<long>();
        c.d = j.at("d").get<long>();
        c.k = j.at("k").get<long>();
        c.r = j.at("r").get<long>();
        c.alpha = j.at("alpha").get<long>();
        c.s1.num = parse_poly(j.at("s1").at("numerator").get<std::string>(), ring);
        c.s1.level = j.at("s1").at("level").get<long>();
        for (auto& t : j.at("coordinate_generators"))
            c.coordinate_generators.emplace_back(
                parse_poly(t.at("element").get<std::string>(), ring),
                t.at("level").get<long>());
        c.verified_degree = j.at("verified_degree").get<long>();
        return c;
    }

    inline Json veronese_cyl_to_json(const VeroneseCylinderWitness& w) {
        Json j;
        j["kind"] = "veronese-cylinder";
        j["p"] = w.p;
        j["q"] = w.q;
        j["H"] = divisor_to_json(w.h_divisor);
        j["D"] = divisor_to_json(w.d_divisor);
        j["phi_q_divisor"] = divisor_to_json(w.phi_q_divisor);
        j["section_degree"] = w.section_degree;
        if (w.section) j["section"] = w.section->str();
        if (w.section_space_dim >= 0) j["section_space_dim"] = w.section_space_dim;
        return j;
    }

    // ------------------------------------------------------------------
    // Certificate re-verification (the `verify` subcommand)
    // ------------------------------------------------------------------

    struct VerifyResult {
        bool ok = false;
        bool unknown = false;
        std::vector<std::string> notes;
    };

    /// Re-checks a certificate file without re-running any search.
    inline VerifyResult verify_certificate(const Json& j) {
        VerifyResult res;
        std::string kind = j.value("kind", "");
        if (kind == "slice") {
            SliceCertificate c = slice_from_json(j);
            detail::require_homogeneous_lnd(c.der);
            if (!slice_identities_hold(c)) {
                res.notes.push_back("slice identities D(g) = h, D(h) = 0 failed");
                return res;
            }
            // kernel generators annihilate and regenerate the asserted degrees
            for (auto& [p, deg] : c.kernel_generators) {
                if (!c.der.apply(p).is_zero()) {
                    res.notes.push_back("kernel generator '" + p.str() + "' not in ker D");
                    return res;
                }
                if (p.wdeg() != deg) {
                    res.notes.push_back("kernel generator degree mismatch for '" + p.str() + "'");
                    return res;
                }
            }
            // Taylor projection property on deterministic sparse samples
            std::mt19937 rng(20260808);
            auto& A = *c.domain;
            long checked = 0;
            for (long nu = 1; nu <= 8 && checked < 6; ++nu) {
                auto basis = A.piece_basis(nu);
                if (basis.empty()) continue;
                Poly a(A.ring());
                for (auto& mono : basis)
                    if (rng() % 3 == 0)
                        a += Poly(A.ring(), mono,
                                  Rational(static_cast<long>(rng() % 5) - 2));
                if (a.is_zero())
                    a = Poly(A.ring(), basis.front(), Rational(1));
                if (!taylor_projection_in_kernel(c, a)) {
                    res.notes.push_back("Taylor projection left ker D at degree " +
                                        std::to_string(nu));
                    return res;
                }
                ++checked;
            }
            res.ok = true;
            res.notes.push_back("slice certificate verified");
            return res;
        }
        if (kind == "cyclic-quotient") {
            auto domain = domain_from_json(j.at("ring"));
            auto der = derivation_from_json(j.at("derivation"), domain);
            Poly h = parse_poly(j.at("h").get<std::string>(), domain->ring());
            auto q = cyclic_quotient(der, h, j.at("verified_degree").get<long>());
            bool ok = q.m == j.at("m").get<long>() && q.n == j.at("n").get<long>() &&
                      q.k == j.at("k").get<long>() &&
                      q.lemma_consistent == j.at("lemma_consistent").get<bool>();
            res.ok = ok && q.injective_on_pieces;
            if (!ok) res.notes.push_back("cyclic quotient data mismatch");
            else res.notes.push_back("cyclic quotient re-checked");
            if (q.fiber.status == Irreducibility::unknown) {
                res.unknown = true;
                res.notes.push_back("fiber irreducibility undecided: " + q.fiber.detail);
            }
            return res;
        }
        if (kind == "polar-cylinder") {
            PolarCylinderCertificate c = polar_from_json(j);
            detail::require_homogeneous_lnd(c.der);
            if (!verify_polar_cylinder(c)) {
                res.notes.push_back("polar cylinder piece verification failed");
                return res;
            }
            res.ok = true;
            res.notes.push_back("polar cylinder certificate verified on " +
                                std::to_string(c.piece_dims.size()) + " pieces");
            return res;
        }
        if (kind == "veronese") {
            auto a = domain_from_json(j.at("ring"));
            long d = j.at("d").get<long>();
            std::vector<Poly> gens;
            std::vector<long> gdeg;
            for (auto& t : j.at("generators")) {
                gens.push_back(parse_poly(t.at("element").get<std::string>(), a->ring()));
                gdeg.push_back(t.at("degree").get<long>());
            }
            std::vector<long> gw = j.at("generator_weights").get<std::vector<long>>();
            std::vector<std::string> names;
            for (std::size_t i = 0; i < gens.size(); ++i) names.push_back("g" + std::to_string(i));
            auto gring = Ring::make(names, gw);
            for (std::size_t i = 0; i < gens.size(); ++i) {
                if (gdeg[i] % d != 0 || gens[i].wdeg() != gdeg[i] || gdeg[i] != gw[i] * d) {
                    res.notes.push_back("generator degree data inconsistent");
                    return res;
                }
            }
            // relations vanish on the generators
            for (auto& rs : j.at("relations")) {
                Poly rel = parse_poly(rs.get<std::string>(), gring);
                Poly ev(a->ring());
                for (auto& [mono, coeff] : rel.terms()) {
                    Poly prod = a->constant(coeff);
                    for (std::size_t i = 0; i < gens.size(); ++i)
                        if (mono[i] > 0) prod *= gens[i].pow(mono[i]);
                    ev += prod;
                }
                if (!a->is_zero_in_quotient(ev)) {
                    res.notes.push_back("relation '" + rel.str() + "' does not vanish");
                    return res;
                }
            }
            res.ok = true;
            if (!j.at("generation_certified").get<bool>()) {
                res.unknown = true;
                res.ok = false;
                res.notes.push_back("generation not certified up to the recorded bound");
            } else {
                res.notes.push_back("veronese report re-checked");
            }
            return res;
        }
        if (kind == "spectrum") {
            QDivisor h = divisor_from_json(j.at("divisor"));
            for (auto& t : j.at("members")) {
                Rational r = parse_rational(t.at("r").get<std::string>());
                PointP1 p = PointP1::parse(t.at("point").get<std::string>());
                QDivisor d = divisor_from_json(t.at("witness_divisor"));
                if (!d.is_effective() || !(h.scaled(r) - d).is_integral() ||
                    (h.scaled(r) - d).degree() != 0 || !spectrum_member(h, r, p)) {
                    res.notes.push_back("spectrum witness for r = " + to_string(r) + " failed");
                    return res;
                }
            }
            res.ok = true;
            res.notes.push_back("all spectrum witnesses re-verified");
            return res;
        }
        if (kind == "veronese-cylinder") {
            long p = j.at("p").get<long>(), q = j.at("q").get<long>();
            QDivisor h = divisor_from_json(j.at("H"));
            QDivisor d = divisor_from_json(j.at("D"));
            auto w = veronese_cylinder(p, q, d, h, nullptr);
            QDivisor phi = divisor_from_json(j.at("phi_q_divisor"));
            res.ok = (phi.terms() == w.phi_q_divisor.terms());
            res.notes.push_back(res.ok ? "veronese cylinder witness re-verified"
                                       : "phi divisor mismatch");
            return res;
        }
        throw input_error("unknown certificate kind '" + kind + "'");
    }

} // namespace cylforge
#endif
