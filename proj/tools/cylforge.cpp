/**
 * @file cylforge.cpp
 * @brief Command-line front end: validation, derivation checks, kernels,
 *        slice/cyclic-quotient/polar-cylinder certificates, Veronese
 *        reports, divisor criteria, the cylindricity spectrum, certificate
 *        re-verification, and the bundled corpus runner.
 *
 * Exit codes: 0 success/true, 1 false/negative verdict, 2 unknown or
 * unverified, 3 input error, 4 resource cap exceeded.
 */
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <cylforge/corpus.hpp>
#include <cylforge/json_io.hpp>

using namespace cylforge;

namespace {

    constexpr int kExitTrue = 0;
    constexpr int kExitFalse = 1;
    constexpr int kExitUnknown = 2;
    constexpr int kExitInput = 3;
    constexpr int kExitResource = 4;

    Json load_json(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw input_error("cannot open '" + path + "'");
        Json j;
        try {
            in >> j;
        } catch (const Json::parse_error& e) {
            throw input_error("JSON parse error in '" + path + "': " + e.what());
        }
        return j;
    }

    struct Output {
        bool json = true;
        std::string out_path;

        void emit(const Json& j, const std::string& text) const {
            std::string payload = json ? j.dump(2) + "\n" : text;
            std::cout << payload;
            if (!out_path.empty()) {
                std::ofstream out(out_path);
                if (!out) throw input_error("cannot write '" + out_path + "'");
                out << j.dump(2) + "\n";
            }
        }
    };

    ProblemFile load_problem(const std::string& path) {
        return problem_from_json(load_json(path));
    }

    Derivation require_derivation(const ProblemFile& p) {
        if (!p.derivation)
            throw input_error("this subcommand needs a 'derivation' in the problem file");
        return *p.derivation;
    }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cylforge: exact certificates for additive actions on graded cones"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string output_mode = "json";
    app.add_option("--output", output_mode, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));

    if (const char* cap = std::getenv("CYLFORGE_MAX_STEPS")) {
        try {
            groebner_step_cap() = std::stol(cap);
        } catch (...) {
            std::cerr << "bad CYLFORGE_MAX_STEPS\n";
            return kExitInput;
        }
    }

    std::string problem_path, out_path, h_str, designate_h, member_str, divisor_path,
        cert_path;
    std::vector<std::string> gens_str;
    std::vector<long> pb;
    long degree = -1, bound = 0, cap = 200, vdeg = 40, dver = 1, h0_nu = -1, ver_pb_d = 0;
    bool positive = false, want_index = false, want_liendo = false, check_prime = false;

    auto* c_validate = app.add_subcommand("validate", "validate a ring presentation");
    c_validate->add_option("--problem", problem_path)->required();
    c_validate->add_flag("--check-prime", check_prime,
                         "bounded zero-divisor probe on the quotient");

    auto* c_lnd = app.add_subcommand("lnd-check", "local nilpotency verdict");
    c_lnd->add_option("--problem", problem_path)->required();
    c_lnd->add_option("--cap", cap, "iteration cap");

    auto* c_kernel = app.add_subcommand("kernel", "graded kernel pieces / saturation index");
    c_kernel->add_option("--problem", problem_path)->required();
    c_kernel->add_option("--degree", degree, "basis of (ker D)_degree");
    c_kernel->add_flag("--index", want_index, "kernel saturation index");
    c_kernel->add_option("--bound", bound, "degree bound");

    auto* c_slice = app.add_subcommand("slice", "graded slice certificate");
    c_slice->add_option("--problem", problem_path)->required();
    c_slice->add_flag("--positive", positive, "force deg h > 0");
    c_slice->add_option("--bound", bound, "degree bound");
    c_slice->add_option("--out", out_path, "write the certificate JSON here");

    auto* c_cyclic = app.add_subcommand("cyclic-quotient", "quotient F = A/(h-1)");
    c_cyclic->add_option("--problem", problem_path)->required();
    c_cyclic->add_option("--h-element", h_str, "kernel element h (polynomial)")->required();
    c_cyclic->add_option("--bound", bound, "verification bound");
    c_cyclic->add_option("--out", out_path, "write the data JSON here");

    auto* c_polar = app.add_subcommand("polar-cylinder", "polar cylinder certificate");
    c_polar->add_option("--problem", problem_path)->required();
    c_polar->add_option("--designate-h", designate_h, "designated h in ker D");
    c_polar->add_option("--bound", bound, "search bound");
    c_polar->add_option("--verified", vdeg, "verify graded pieces up to this degree");
    c_polar->add_option("--out", out_path, "write the certificate JSON here");

    auto* c_ver = app.add_subcommand("veronese", "Veronese subring report / membership");
    c_ver->add_option("--problem", problem_path)->required();
    c_ver->add_option("--d", dver, "Veronese index");
    c_ver->add_option("--bound", bound, "generation bound");
    c_ver->add_option("--member", member_str, "test membership of this polynomial");
    c_ver->add_option("--gens", gens_str, "subalgebra generators for --member");
    c_ver->add_option("--out", out_path, "write the report JSON here");

    auto* c_dpd = app.add_subcommand("dpd", "divisor-side computations on the line");
    c_dpd->add_option("--pb", pb, "coprime triple a b c")->expected(3);
    c_dpd->add_option("--divisor", divisor_path, "divisor JSON file");
    c_dpd->add_option("--h0", h0_nu, "section count of floor(nu H)");
    c_dpd->add_flag("--liendo", want_liendo, "two-point cylindricity criterion");
    c_dpd->add_option("--veronese-pb", ver_pb_d, "Veronese divisibility criterion at d");
    c_dpd->add_option("--out", out_path, "write the result JSON here");

    auto* c_spec = app.add_subcommand("spectrum", "cylindricity spectrum");
    c_spec->add_option("--pb", pb, "coprime triple a b c")->expected(3);
    c_spec->add_option("--divisor", divisor_path, "divisor JSON file");
    long max_num = 100, max_den = 10;
    c_spec->add_option("--max-num", max_num, "numerator bound");
    c_spec->add_option("--max-den", max_den, "denominator bound");
    c_spec->add_option("--out", out_path, "write the report JSON here");

    auto* c_verify = app.add_subcommand("verify", "re-check a certificate file");
    c_verify->add_option("certificate", cert_path, "certificate JSON")->required();

    auto* c_corpus = app.add_subcommand("corpus", "bundled worked examples");
    std::string corpus_action = "list", corpus_id = "all";
    c_corpus->add_option("action", corpus_action, "list or run")
        ->check(CLI::IsMember({"list", "run"}));
    c_corpus->add_option("case", corpus_id, "case id or 'all'");

    CLI11_PARSE(app, argc, argv);

    Output out;
    out.json = (output_mode == "json");
    out.out_path = out_path;

    try {
        if (*c_validate) {
            Json j = load_json(problem_path);
            // accept either a bare ring description or a problem file
            Json ringj = j.contains("ring") ? j.at("ring") : j;
            ValidationReport rep;
            try {
                reject_unknown_keys(ringj, {"variables", "weights", "relations"},
                                    "ring description");
                auto ring = Ring::make(ringj.at("variables").get<std::vector<std::string>>(),
                                       ringj.at("weights").get<std::vector<long>>());
                std::vector<Poly> rels;
                if (ringj.contains("relations"))
                    for (auto& s : ringj.at("relations"))
                        rels.push_back(parse_poly(s.get<std::string>(), ring));
                rep = validate_presentation(ring, rels);
                if (rep.valid && check_prime) {
                    GradedDomain a(ring, rels);
                    if (auto zd = a.zero_divisor_probe(6)) {
                        rep.valid = false;
                        rep.errors.push_back("zero divisors found: (" + zd->first.str() +
                                             ") * (" + zd->second.str() + ") = 0");
                    }
                }
            } catch (const input_error& e) {
                rep.valid = false;
                rep.errors.push_back(e.what());
            }
            std::ostringstream text;
            text << (rep.valid ? "valid" : "invalid") << "\n";
            for (auto& e : rep.errors) text << "error: " << e << "\n";
            for (auto& w : rep.warnings) text << "warning: " << w << "\n";
            if (rep.valid) text << "saturation index e(A) = " << rep.saturation_index << "\n";
            out.emit(validation_to_json(rep), text.str());
            return rep.valid ? kExitTrue : kExitFalse;
        }

        if (*c_lnd) {
            auto p = load_problem(problem_path);
            auto d = require_derivation(p);
            auto v = is_locally_nilpotent(d, cap == 200 ? p.nilpotency_cap : cap);
            std::ostringstream text;
            text << to_string(v.status) << " (" << to_string(v.reason) << ")\n";
            if (!v.witness.empty()) text << v.witness << "\n";
            out.emit(verdict_to_json(v), text.str());
            switch (v.status) {
                case NilpotencyVerdict::Status::nilpotent: return kExitTrue;
                case NilpotencyVerdict::Status::not_nilpotent: return kExitFalse;
                default: return kExitUnknown;
            }
        }

        if (*c_kernel) {
            auto p = load_problem(problem_path);
            auto d = require_derivation(p);
            long b = bound > 0 ? bound : p.degree_bound;
            if (want_index) {
                auto rep = kernel_saturation_index(d, b);
                std::ostringstream text;
                text << "e(ker D) = " << rep.index
                     << (rep.certified ? " (certified)" : " (not certified)") << "\n";
                out.emit(kernel_index_to_json(rep), text.str());
                return rep.certified ? kExitTrue : kExitUnknown;
            }
            if (degree < 0) throw input_error("kernel needs --degree or --index");
            auto basis = kernel_piece(d, degree);
            Json j;
            j["degree"] = degree;
            Json arr = Json::array();
            std::ostringstream text;
            for (auto& b2 : basis) {
                arr.push_back(b2.str());
                text << b2.str() << "\n";
            }
            j["basis"] = arr;
            j["dim"] = basis.size();
            out.emit(j, text.str());
            return kExitTrue;
        }

        if (*c_slice) {
            auto p = load_problem(problem_path);
            auto d = require_derivation(p);
            long b = bound > 0 ? bound : p.degree_bound;
            auto cert = positive ? positive_degree_slice(d, b) : slice_construct(d, b);
            std::ostringstream text;
            text << "g = " << cert.g.str() << "\nh = " << cert.h.str() << "\ns = "
                 << cert.slice_str() << "\nkernel generators:";
            for (auto& [kg, kd] : cert.kernel_generators)
                text << " " << kg.str() << " (deg " << kd << ")";
            text << "\n";
            out.emit(slice_to_json(cert), text.str());
            return kExitTrue;
        }

        if (*c_cyclic) {
            auto p = load_problem(problem_path);
            auto d = require_derivation(p);
            long b = bound > 0 ? bound : p.verified_degree;
            auto q = cyclic_quotient(d, parse_poly(h_str, p.domain->ring()), b);
            std::ostringstream text;
            text << "m = " << q.m << ", n = " << q.n << ", k = " << q.k
                 << ", e(ker D) = " << q.kernel_index
                 << (q.lemma_consistent ? " (consistent)" : " (INCONSISTENT)") << "\n"
                 << "fiber: " << to_string(q.fiber.status) << " (" << q.fiber.detail << ")\n";
            for (auto& [rep, lvl] : q.invariant_generators)
                text << "invariant generator: (" << rep.str() << ")/h^" << lvl << "\n";
            out.emit(cyclic_to_json(q), text.str());
            if (q.fiber.status == Irreducibility::reducible) return kExitFalse;
            if (q.fiber.status == Irreducibility::unknown) return kExitUnknown;
            return kExitTrue;
        }

        if (*c_polar) {
            auto p = load_problem(problem_path);
            auto d = require_derivation(p);
            PolarCylinderOptions opts;
            opts.degree_bound = bound > 0 ? bound : p.degree_bound;
            opts.verified_degree = vdeg != 40 ? vdeg : p.verified_degree;
            if (!designate_h.empty())
                opts.designated_h = parse_poly(designate_h, p.domain->ring());
            auto cert = polar_cylinder(d, opts);
            std::ostringstream text;
            text << "f = " << cert.f.str() << " (degree " << cert.f.wdeg() << ")\n"
                 << "k = " << cert.k << ", r = " << cert.r << ", alpha = " << cert.alpha
                 << ", t = " << cert.t.str() << "\n"
                 << "s1 = (" << cert.s1.num.str() << ")/f^" << cert.s1.level << "\n"
                 << "coordinate generators: " << cert.coordinate_generators.size() << "\n"
                 << "pieces verified: " << cert.piece_dims.size() << "\n";
            out.emit(polar_to_json(cert), text.str());
            return kExitTrue;
        }

        if (*c_ver) {
            auto p = load_problem(problem_path);
            if (!member_str.empty()) {
                std::vector<Poly> gens;
                for (auto& s : gens_str) gens.push_back(parse_poly(s, p.domain->ring()));
                if (gens.empty()) throw input_error("--member needs --gens");
                auto m = subalgebra_member(parse_poly(member_str, p.domain->ring()), gens,
                                           bound > 0 ? bound : 200,
                                           p.domain->relations().empty() ? nullptr
                                                                         : p.domain.get());
                std::ostringstream text;
                text << to_string(m.status) << "\n";
                out.emit(membership_to_json(m), text.str());
                switch (m.status) {
                    case Membership::Status::yes: return kExitTrue;
                    case Membership::Status::no: return kExitFalse;
                    default: return kExitUnknown;
                }
            }
            auto rep = veronese(*p.domain, dver, bound);
            std::ostringstream text;
            text << rep.generators.size() << " generators, " << rep.relations.size()
                 << " relations; generation bound " << rep.generation_bound
                 << ", verified up to " << rep.verified_up_to << "\n";
            out.emit(veronese_to_json(rep, *p.domain), text.str());
            return rep.generation_certified ? kExitTrue : kExitUnknown;
        }

        if (*c_dpd) {
            QDivisor H;
            if (pb.size() == 3) H = pham_brieskorn_divisor(pb[0], pb[1], pb[2]);
            else if (!divisor_path.empty()) H = divisor_from_json(load_json(divisor_path));
            else throw input_error("dpd needs --pb or --divisor");
            Json j;
            j["divisor"] = divisor_to_json(H);
            j["degree"] = to_string(H.degree());
            std::ostringstream text;
            text << "H = " << H.str() << " (degree " << to_string(H.degree()) << ")\n";
            int code = kExitTrue;
            if (h0_nu >= 0) {
                long h0 = h0_floor(H, h0_nu);
                j["h0"] = h0;
                j["nu"] = h0_nu;
                text << "h0(floor(" << h0_nu << " H)) = " << h0 << "\n";
            }
            if (want_liendo) {
                bool cyl = liendo_cylindrical(H);
                j["liendo_cylindrical"] = cyl;
                text << "two-point criterion: " << (cyl ? "cylindrical" : "not cylindrical")
                     << "\n";
                code = cyl ? kExitTrue : kExitFalse;
            }
            if (ver_pb_d > 0) {
                if (pb.size() != 3)
                    throw input_error("--veronese-pb needs --pb a b c");
                bool cyl = veronese_cylindrical_pb(pb[0], pb[1], pb[2], ver_pb_d);
                j["veronese_cylindrical"] = cyl;
                j["d"] = ver_pb_d;
                text << "Veronese cone at d = " << ver_pb_d << ": "
                     << (cyl ? "cylindrical" : "not cylindrical") << "\n";
                code = cyl ? kExitTrue : kExitFalse;
            }
            out.emit(j, text.str());
            return code;
        }

        if (*c_spec) {
            QDivisor H;
            if (pb.size() == 3) H = pham_brieskorn_divisor(pb[0], pb[1], pb[2]);
            else if (!divisor_path.empty()) H = divisor_from_json(load_json(divisor_path));
            else throw input_error("spectrum needs --pb or --divisor");
            auto rep = cylindricity_spectrum(H, max_num, max_den);
            std::ostringstream text;
            text << "members: " << rep.members.size() << "\nprimitive:";
            for (auto& r : rep.primitive_members) text << " " << to_string(r);
            text << "\n";
            if (rep.dense) text << "dense ray: every r works at some point; truncated\n";
            out.emit(spectrum_to_json(rep), text.str());
            return kExitTrue;
        }

        if (*c_verify) {
            auto res = verify_certificate(load_json(cert_path));
            Json j;
            j["ok"] = res.ok;
            j["unknown"] = res.unknown;
            j["notes"] = res.notes;
            std::ostringstream text;
            text << (res.ok ? "verified" : (res.unknown ? "unverified (unknown)" : "FAILED"))
                 << "\n";
            for (auto& n : res.notes) text << n << "\n";
            out.emit(j, text.str());
            if (res.ok) return kExitTrue;
            return res.unknown ? kExitUnknown : kExitFalse;
        }

        if (*c_corpus) {
            if (corpus_action == "list") {
                Json j = Json::array();
                std::ostringstream text;
                for (auto& id : corpus_ids()) {
                    j.push_back(id);
                    text << id << "\n";
                }
                out.emit(j, text.str());
                return kExitTrue;
            }
            std::vector<std::string> ids =
                corpus_id == "all" ? corpus_ids() : std::vector<std::string>{corpus_id};
            Json j = Json::array();
            std::ostringstream text;
            bool all_ok = true;
            for (auto& id : ids) {
                auto res = run_corpus_case(id);
                Json cj;
                cj["id"] = res.id;
                cj["title"] = res.title;
                cj["pass"] = res.pass();
                Json checks = Json::array();
                for (auto& c : res.checks) {
                    Json ck;
                    ck["label"] = c.label;
                    ck["basis"] = c.basis;
                    ck["pass"] = c.pass;
                    if (!c.detail.empty()) ck["detail"] = c.detail;
                    checks.push_back(ck);
                    text << (c.pass ? "  ok  " : "  FAIL ") << "[" << res.id << "] "
                         << c.label;
                    if (!c.pass && !c.detail.empty()) text << " -- " << c.detail;
                    text << "\n";
                }
                cj["checks"] = checks;
                j.push_back(cj);
                if (!res.pass()) {
                    all_ok = false;
                    break; // stop at first mismatch, diff already printed
                }
            }
            out.emit(j, text.str());
            return all_ok ? kExitTrue : kExitFalse;
        }
    } catch (const resource_error& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kExitResource;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const Json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
