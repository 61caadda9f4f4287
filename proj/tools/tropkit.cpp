// tropkit: exact computations with tropical cycles from the command line.
//
// Exit codes: 0 = property holds / computation succeeded; 1 = property
// violated (the report carries a witness); 2 = usage or input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tropkit/errors.hpp"
#include "tropkit/io.hpp"

using namespace tropkit;

namespace {

struct Options {
    bool json = false;
    std::uint64_t seed = 0;
    std::string out_file;
};

void emit(const Options& opt, const Json& report, const std::string& text) {
    if (opt.json)
        std::cout << report.dump(2) << "\n";
    else
        std::cout << text;
}

void write_out(const Options& opt, const TropicalCycle& c) {
    if (opt.out_file.empty()) return;
    std::ofstream out(opt.out_file);
    if (!out) throw ParseError(opt.out_file + ": cannot open for writing");
    out << save_cycle_document(c);
}

std::string point_str(const QVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].str();
    }
    return s + ")";
}

int cmd_validate(const std::string& cycle_file, const Options& opt) {
    LoadedCycle lc;
    try {
        lc = load_cycle_file(cycle_file);
    } catch (const IntersectionAxiomViolated& e) {
        Json j{{"command", "validate"}, {"valid", false},
               {"offending_cells", {e.cell_a, e.cell_b}}};
        emit(opt, j, std::string("invalid: ") + e.what() + "\n");
        return 1;
    }
    Json j{{"command", "validate"},
           {"valid", true},
           {"input_cells", lc.report.input_cells},
           {"cells", lc.cycle.complex.cells.size()},
           {"faces_added_by_closure", lc.report.added_faces},
           {"dimension", lc.cycle.dim},
           {"pure", lc.cycle.is_pure()},
           {"effective", lc.cycle.is_effective()},
           {"warnings", lc.warnings}};
    std::string text = "valid: " + std::to_string(lc.cycle.complex.cells.size()) + " cells (" +
                       std::to_string(lc.report.added_faces) + " added by closure), dimension " +
                       std::to_string(lc.cycle.dim) + (lc.cycle.is_pure() ? ", pure" : ", not pure") +
                       "\n";
    for (const auto& w : lc.warnings) text += "warning: " + w + "\n";
    emit(opt, j, text);
    return 0;
}

int cmd_balance(const std::string& cycle_file, const Options& opt) {
    const LoadedCycle lc = load_cycle_file(cycle_file);
    const BalancingReport rep = check_balancing(lc.cycle);
    Json j = balancing_to_json(rep);
    j["command"] = "balance";
    if (rep.balanced) {
        emit(opt, j, "balanced: " + std::to_string(rep.faces_checked) + " codim-1 face" +
                         (rep.faces_checked == 1 ? "" : "s") + " checked\n");
        return 0;
    }
    std::string text = "unbalanced: " + std::to_string(rep.violations.size()) + " violation" +
                       (rep.violations.size() == 1 ? "" : "s") + "\n";
    for (const auto& v : rep.violations) {
        text += "  face " + std::to_string(v.face) + ": excess (";
        for (std::size_t i = 0; i < v.excess.size(); ++i) {
            if (i) text += ", ";
            text += v.excess[i].get_str();
        }
        text += ")\n";
    }
    emit(opt, j, text);
    return 1;
}

int cmd_star(const std::string& cycle_file, const std::string& point, const Options& opt) {
    const LoadedCycle lc = load_cycle_file(cycle_file);
    const QVec omega = parse_point(point, lc.cycle.complex.ambient_dim);
    const TropicalCycle st = star(lc.cycle, omega);
    Json j{{"command", "star"},
           {"point", qvec_to_json(omega)},
           {"dimension", st.dim},
           {"maximal_cells", st.weights.size()},
           {"cycle", cycle_to_json(st)}};
    write_out(opt, st);
    emit(opt, j, "star at " + point_str(omega) + ": " + std::to_string(st.weights.size()) +
                     " cones, dimension " + std::to_string(st.dim) + "\n");
    return 0;
}

int cmd_local_dim(const std::string& cycle_file, const std::string& point, const Options& opt) {
    const LoadedCycle lc = load_cycle_file(cycle_file);
    const QVec omega = parse_point(point, lc.cycle.complex.ambient_dim);
    const LocalDimension ld = local_dimension(lc.cycle, omega);
    Json j{{"command", "local-dim"},
           {"point", qvec_to_json(omega)},
           {"min_dim", ld.min_dim},
           {"max_dim", ld.max_dim},
           {"pure", ld.is_pure}};
    emit(opt, j, "local dimension at " + point_str(omega) + ": min " + std::to_string(ld.min_dim) +
                     ", max " + std::to_string(ld.max_dim) + (ld.is_pure ? ", pure" : ", not pure") +
                     "\n");
    return 0;
}

int cmd_corner_locus(const std::string& cycle_file, const std::string& fn_file,
                     const Options& opt) {
    const LoadedCycle lc = load_cycle_file(cycle_file);
    const LoadedFunction lf = load_function_file(fn_file, lc);
    const CornerLocus corner = corner_locus(lf.func);
    Json faces = Json::array();
    std::string text;
    for (const auto& [i, w] : corner.weight_functions) {
        Json f{{"face", i},
               {"weight_linear", qvec_to_json(w.linear)},
               {"weight_constant", w.constant.str()}};
        faces.push_back(std::move(f));
        text += "  face " + std::to_string(i) +
                (is_zero_vec(w.linear) ? ": weight " + w.constant.str()
                                       : ": affine weight, constant " + w.constant.str()) +
                "\n";
    }
    Json j{{"command", "corner-locus"},
           {"dimension", corner.dim},
           {"faces", faces},
           {"integral", corner.has_integral_weights()}};
    if (!opt.out_file.empty()) {
        // Document serialization carries integer weights only.
        const TropicalCycle cyc = corner.as_cycle();
        write_out(opt, cyc);
        j["out"] = opt.out_file;
    }
    emit(opt, j, "corner locus: " + std::to_string(corner.weight_functions.size()) +
                     " weighted face" + (corner.weight_functions.size() == 1 ? "" : "s") +
                     ", dimension " + std::to_string(corner.dim) + "\n" + text);
    return 0;
}

int cmd_psh_check(const std::string& cycle_file, const std::string& fn_file, const Options& opt) {
    const LoadedCycle lc = load_cycle_file(cycle_file);
    const LoadedFunction lf = load_function_file(fn_file, lc);
    const PshReport rep = check_psh(lf.func);
    Json j = psh_to_json(rep);
    j["command"] = "psh-check";
    if (rep.verdict) {
        emit(opt, j, "psh: facewise Hessians positive semidefinite, corner weights nonnegative\n");
        return 0;
    }
    std::string text = "not psh:\n";
    for (const auto& h : rep.hessian_violations)
        text += "  cell " + std::to_string(h.cell) + ": direction " + point_str(h.direction) +
                " has quadratic value " + h.value.str() + "\n";
    for (const auto& c : rep.corner_violations)
        text += "  face " + std::to_string(c.face) + ": weight " + c.value.str() + " at " +
                point_str(c.point) + "\n";
    emit(opt, j, text);
    return 1;
}

int cmd_slice(const std::string& cycle_file, const std::string& normal, const std::string& offset,
              const Options& opt) {
    const LoadedCycle lc = load_cycle_file(cycle_file);
    const QVec nvec = parse_point(normal, lc.cycle.complex.ambient_dim);
    RationalHyperplane h;
    try {
        h = make_hyperplane(nvec, Rational::parse(offset));
    } catch (const ZeroVector&) {
        throw ParseError("--normal must be nonzero");
    }
    const GenericityCertificate cert = is_generic(lc.cycle, h);
    if (!cert.generic) {
        Json j = genericity_to_json(cert);
        j["command"] = "slice";
        std::string text = "not generic: cells contained in the hyperplane:";
        for (int o : cert.offenders) text += " " + std::to_string(o);
        emit(opt, j, text + "\n");
        return 1;
    }
    const TropicalCycle sliced = stable_intersect(lc.cycle, h);
    Json j{{"command", "slice"},
           {"normal", zvec_to_json(h.normal)},
           {"offset", h.offset.str()},
           {"dimension", sliced.dim},
           {"maximal_cells", sliced.weights.size()},
           {"cycle", cycle_to_json(sliced)}};
    write_out(opt, sliced);
    emit(opt, j, "sliced: " + std::to_string(sliced.weights.size()) + " maximal cell" +
                     (sliced.weights.size() == 1 ? "" : "s") + ", dimension " +
                     std::to_string(sliced.dim) + "\n");
    return 0;
}

int cmd_sample_hyperplane(const std::string& cycle_file, const std::string& through,
                          const Options& opt) {
    const LoadedCycle lc = load_cycle_file(cycle_file);
    const int n = lc.cycle.complex.ambient_dim;
    const QVec flat = parse_point(through, -1);
    std::vector<QVec> points;
    if (static_cast<int>(flat.size()) == n)
        points.push_back(flat);
    else if (static_cast<int>(flat.size()) == 2 * n) {
        points.emplace_back(flat.begin(), flat.begin() + n);
        points.emplace_back(flat.begin() + n, flat.end());
    } else {
        throw ParseError("--through expects one or two points (" + std::to_string(n) + " or " +
                         std::to_string(2 * n) + " comma-separated rationals)");
    }
    const SampledHyperplane s = sample_generic_hyperplane(lc.cycle, points, opt.seed);
    Json j{{"command", "sample-hyperplane"},
           {"normal", zvec_to_json(s.hyperplane.normal)},
           {"offset", s.hyperplane.offset.str()},
           {"iterations", s.iterations},
           {"height", s.height},
           {"certificate", genericity_to_json(s.certificate)}};
    std::string text = "normal (";
    for (std::size_t i = 0; i < s.hyperplane.normal.size(); ++i) {
        if (i) text += ", ";
        text += s.hyperplane.normal[i].get_str();
    }
    emit(opt, j, text + "), offset " + s.hyperplane.offset.str() + ", " +
                     std::to_string(s.iterations) + " draw" + (s.iterations == 1 ? "" : "s") + "\n");
    return 0;
}

int cmd_max_principle(const std::string& cycle_file, const std::string& fn_file,
                      const std::string& point, const Options& opt) {
    const LoadedCycle lc = load_cycle_file(cycle_file);
    const LoadedFunction lf = load_function_file(fn_file, lc);
    const QVec omega = parse_point(point, lc.cycle.complex.ambient_dim);
    const MaxPrincipleVerdict v = verify_max_principle(lf.func, omega);
    Json j = verdict_to_json(v);
    j["command"] = "max-principle";
    j["point"] = qvec_to_json(omega);
    switch (v.status) {
    case MaxPrincipleVerdict::Status::LocallyConstant:
        emit(opt, j, "locally constant at " + point_str(omega) + " (value " + v.base_value.str() +
                         ", " + std::to_string(v.constancy.size()) + " star cell" +
                         (v.constancy.size() == 1 ? "" : "s") + " certified)\n");
        return 0;
    case MaxPrincipleVerdict::Status::NotPsh:
        emit(opt, j, "not psh: maximum principle does not apply\n");
        return 1;
    case MaxPrincipleVerdict::Status::NotLocalMax:
        emit(opt, j, "not a local maximum at " + point_str(omega) + "\n");
        return 1;
    case MaxPrincipleVerdict::Status::NotLocallyConstant:
        emit(opt, j, "COUNTEREXAMPLE: psh with a local maximum but not locally constant; f(" +
                         point_str(v.witness_point) + ") = " + v.witness_value.str() + " != " +
                         v.base_value.str() + "\n");
        return 1;
    }
    return 2;
}

int cmd_trace(const std::string& cycle_file, const std::string& fn_file, const Options& opt) {
    const LoadedCycle lc = load_cycle_file(cycle_file);
    const LoadedFunction lf = load_function_file(fn_file, lc);
    const SlicingTrace t = slicing_trace(lf.cycle, lf.func, opt.seed);
    Json j = trace_to_json(t);
    j["command"] = "trace";
    const TraceCheck chk = verify_trace(t);
    j["recheck"] = chk.ok;
    if (!chk.ok) j["recheck_reason"] = chk.reason;
    std::string text;
    switch (t.status) {
    case SlicingTrace::Status::Completed: {
        text = "trace completed: " + std::to_string(t.nodes.size()) + " node" +
               (t.nodes.size() == 1 ? "" : "s") + ", dimensions";
        for (const auto& node : t.nodes) text += " " + std::to_string(node.dimension);
        text += chk.ok ? "; re-check passed\n" : "; RE-CHECK FAILED: " + chk.reason + "\n";
        emit(opt, j, text);
        return chk.ok ? 0 : 1;
    }
    case SlicingTrace::Status::NotBalanced:
        emit(opt, j, "trace aborted: cycle not balanced\n");
        return 1;
    case SlicingTrace::Status::NotPsh:
        emit(opt, j, "trace aborted: function not weakly tropically psh\n");
        return 1;
    case SlicingTrace::Status::NotLocalMax:
        emit(opt, j, "trace aborted: no local maximum at the origin\n");
        return 1;
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("TROPKIT_MAX_DIM")) {
        try {
            set_dim_guard(std::min(kDimGuard, std::stoi(env)));
        } catch (...) {
            std::cerr << "error: TROPKIT_MAX_DIM must be an integer\n";
            return 2;
        }
    }

    CLI::App app{"tropkit: exact tropical cycles, corner loci, and the maximum principle"};
    app.require_subcommand(1);
    Options opt;
    app.add_flag("--json", opt.json, "machine-readable JSON report");
    app.add_option("--seed", opt.seed, "seed for deterministic sampling");
    app.add_option("--out", opt.out_file, "write the resulting cycle document to FILE");

    std::string cycle_file, fn_file, point, normal, offset = "0", through;

    auto sub = [&](const std::string& name, const std::string& desc) {
        CLI::App* s = app.add_subcommand(name, desc);
        s->fallthrough(); // global --json/--seed/--out may follow the subcommand
        return s;
    };

    auto* validate = sub("validate", "check the polyhedral complex axioms");
    validate->add_option("CYCLE", cycle_file)->required();

    auto* balance = sub("balance", "check the balancing condition");
    balance->add_option("CYCLE", cycle_file)->required();

    auto* star_cmd = sub("star", "fan of outgoing directions at a point");
    star_cmd->add_option("CYCLE", cycle_file)->required();
    star_cmd->add_option("--point", point)->required();

    auto* localdim = sub("local-dim", "local dimensions at a point");
    localdim->add_option("CYCLE", cycle_file)->required();
    localdim->add_option("--point", point)->required();

    auto* corner = sub("corner-locus", "corner locus of a function on a cycle");
    corner->add_option("CYCLE", cycle_file)->required();
    corner->add_option("FN", fn_file)->required();

    auto* psh = sub("psh-check", "weak tropical plurisubharmonicity");
    psh->add_option("CYCLE", cycle_file)->required();
    psh->add_option("FN", fn_file)->required();

    auto* slice = sub("slice", "stable intersection with a hyperplane");
    slice->add_option("CYCLE", cycle_file)->required();
    slice->add_option("--normal", normal)->required();
    slice->add_option("--offset", offset);

    auto* sample = sub("sample-hyperplane", "sample a generic hyperplane");
    sample->add_option("CYCLE", cycle_file)->required();
    sample->add_option("--through", through)->required();

    auto* maxp = sub("max-principle", "verify the tropical maximum principle");
    maxp->add_option("CYCLE", cycle_file)->required();
    maxp->add_option("FN", fn_file)->required();
    maxp->add_option("--point", point)->required();

    auto* trace = sub("trace", "inductive slicing trace at the origin");
    trace->add_option("CYCLE", cycle_file)->required();
    trace->add_option("FN", fn_file)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(cycle_file, opt);
        if (balance->parsed()) return cmd_balance(cycle_file, opt);
        if (star_cmd->parsed()) return cmd_star(cycle_file, point, opt);
        if (localdim->parsed()) return cmd_local_dim(cycle_file, point, opt);
        if (corner->parsed()) return cmd_corner_locus(cycle_file, fn_file, opt);
        if (psh->parsed()) return cmd_psh_check(cycle_file, fn_file, opt);
        if (slice->parsed()) return cmd_slice(cycle_file, normal, offset, opt);
        if (sample->parsed()) return cmd_sample_hyperplane(cycle_file, through, opt);
        if (maxp->parsed()) return cmd_max_principle(cycle_file, fn_file, point, opt);
        if (trace->parsed()) return cmd_trace(cycle_file, fn_file, opt);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionGuardExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConstraintLimitExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NonIntegralWeight& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IntersectionAxiomViolated& e) {
        std::cout << "invalid complex: " << e.what() << "\n";
        return 1;
    } catch (const TropkitError& e) {
        std::cout << "violated: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
