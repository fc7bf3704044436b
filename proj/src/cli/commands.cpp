#include "ggm/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ggm/bl_solver.hpp"
#include "ggm/chains.hpp"
#include "ggm/diagnostics.hpp"
#include "ggm/measures.hpp"
#include "ggm/parallel.hpp"
#include "ggm/serialization.hpp"

namespace ggm {
namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

struct Options {
    std::string model_path;
    std::uint64_t seed = 1;
    long window = -1;
    double tol = 1e-9;
    std::string out;
    double perturb = 0.0;
    double budget = 1e8;

    // solve-bl
    std::optional<double> beta_min;
    std::optional<double> beta_max;
    double beta_step = 0.05;
    std::string ansatz = "generic";
    double damping = 0.7;
    int max_iter = 20000;

    // critical-beta
    int q = 2;
    int d = 2;

    // measures
    int depth = 1;
    int verify_depth = 2;
    std::vector<int> edges{0};
    std::size_t n = 1000;

    // correlation
    int nmax = 10;
    long zeta_a = 1;
    long zeta_b = 1;

    // counterexample
    double eps0 = 0.1;
    double eps1 = 0.05;
    int kmax = 12;
};

Ansatz parse_ansatz(const std::string& s)
{
    if (s == "generic") {
        return Ansatz::generic;
    }
    if (s == "q4_paired") {
        return Ansatz::q4_paired;
    }
    throw Error(ErrorKind::config, "'--ansatz': expected generic or q4_paired, got '" + s + "'");
}

std::string num(double x)
{
    return fmt::format("{:.17g}", x);
}

class Output {
  public:
    Output(const Options& opt, std::ostream& fallback) : opt_(opt), fallback_(fallback) {}

    void write(const std::string& text)
    {
        if (opt_.out.empty()) {
            fallback_ << text;
            return;
        }
        std::ofstream f(opt_.out, std::ios::binary);
        if (!f) {
            throw Error(ErrorKind::config, "cannot write '" + opt_.out + "'");
        }
        f << text;
    }

  private:
    const Options& opt_;
    std::ostream& fallback_;
};

std::string csv_header(const json& config)
{
    return fmt::format("# schema_version: {}\n# config: {}\n", kSchemaVersion, config.dump());
}

std::string json_document(const json& config, json body)
{
    body["schema_version"] = kSchemaVersion;
    body["config"] = config;
    return body.dump(2) + "\n";
}

ModelConfig require_model(const Options& opt)
{
    if (opt.model_path.empty()) {
        throw Error(ErrorKind::config, "'--model': required for this command");
    }
    return load_model(opt.model_path);
}

json base_config(const std::string& command, const Options& opt, const ModelConfig* model)
{
    json c{{"command", command}, {"seed", opt.seed}, {"tol", opt.tol}, {"perturb", opt.perturb}};
    c["window"] = opt.window >= 0 ? json(opt.window) : json("auto");
    if (model) {
        c["model"] = to_json(*model);
    }
    return c;
}

// Boundary law: explicit values, or a branch picked from a multi-start solve.
PeriodicBoundaryLaw resolve_law(const ModelConfig& cfg, const TransferOperator& op, const Options& opt, json& note)
{
    PeriodicBoundaryLaw law = PeriodicBoundaryLaw::trivial(cfg.q);
    if (cfg.boundary_law) {
        law = PeriodicBoundaryLaw(*cfg.boundary_law);
        note["law_source"] = "explicit";
    } else {
        Ansatz ansatz = parse_ansatz(opt.ansatz);
        auto branches = multi_start_solve(op, cfg.q, cfg.d, ansatz);
        std::string want = cfg.branch.value_or("");
        const SolveReport* pick = nullptr;
        for (const auto& b : branches) {
            if (!want.empty() && to_string(b.branch_label) == want) {
                pick = &b;
                break;
            }
        }
        if (!want.empty() && !pick) {
            throw Error(ErrorKind::config, "'branch': no solution with label '" + want + "' for this model");
        }
        if (!pick) {
            // default: upper branch, else the first nontrivial one, else trivial
            for (const auto& b : branches) {
                if (b.branch_label == BranchLabel::upper) {
                    pick = &b;
                }
            }
            for (const auto& b : branches) {
                if (!pick && b.branch_label != BranchLabel::trivial) {
                    pick = &b;
                }
            }
            if (!pick) {
                pick = &branches.front();
            }
        }
        law = pick->solution;
        note["law_source"] = "solved";
        note["branch"] = std::string(to_string(pick->branch_label));
    }
    if (opt.perturb != 0.0) {
        law = law.perturbed(opt.perturb);
    }
    note["boundary_law"] = std::vector<double>(law.values().begin(), law.values().end());
    note["boundary_law_residual"] = residual(law, op, cfg.d);
    return law;
}

struct Prepared {
    ModelConfig cfg;
    TransferOperator op = TransferOperator::sos(1.0);
    PeriodicBoundaryLaw law = PeriodicBoundaryLaw::trivial(1);
    std::optional<LayerKernel> kernel;
    json config;
};

// With an explicit window the potential is restricted to |m| <= M, so every
// identity is exact on the window; otherwise the window is chosen from the
// tail bound of the full potential.
Prepared prepare(const std::string& command, const Options& opt, long default_window)
{
    Prepared p;
    p.cfg = require_model(opt);
    p.config = base_config(command, opt, &p.cfg);
    long M = opt.window >= 0 ? opt.window : default_window;
    p.op = M >= 0 ? restrict_to_window(p.cfg.op, M) : p.cfg.op;
    p.config["window"] = M >= 0 ? json(M) : json("auto");
    p.config["potential_restricted_to_window"] = M >= 0;
    json note;
    p.law = resolve_law(p.cfg, p.op, opt, note);
    p.config["resolved"] = note;
    if (M >= 0) {
        p.kernel = build_layer_kernel(p.op, p.law, IncrementWindow{M, 1e-12});
    } else {
        p.kernel = build_layer_kernel(p.op, p.law);
    }
    p.config["resolved"]["cutoff"] = p.kernel->cutoff();
    return p;
}

TransferOperator with_beta(const TransferOperator& op, double beta)
{
    switch (op.kind()) {
    case PotentialKind::sos: return TransferOperator::sos(beta);
    case PotentialKind::discrete_gaussian: return TransferOperator::discrete_gaussian(beta);
    default: break;
    }
    throw Error(ErrorKind::config, "'--beta-min/--beta-max': sweeps need a sos or discrete_gaussian potential");
}

double op_beta(const TransferOperator& op)
{
    switch (op.kind()) {
    case PotentialKind::sos:
    case PotentialKind::discrete_gaussian: return op.beta();
    case PotentialKind::lifted_potts:
    case PotentialKind::lifted_potts_positive: return op.beta_tilde();
    default: return std::nan("");
    }
}

int cmd_solve_bl(const Options& opt, Output& out)
{
    auto cfg = require_model(opt);
    Ansatz ansatz = parse_ansatz(opt.ansatz);
    json config = base_config("solve-bl", opt, &cfg);
    config["ansatz"] = opt.ansatz;
    config["damping"] = opt.damping;
    config["max_iter"] = opt.max_iter;

    std::vector<TransferOperator> ops;
    if (opt.beta_min || opt.beta_max) {
        if (!opt.beta_min || !opt.beta_max) {
            throw Error(ErrorKind::config, "'--beta-min/--beta-max': give both ends of the sweep");
        }
        if (!(opt.beta_step > 0.0) || *opt.beta_max < *opt.beta_min) {
            throw Error(ErrorKind::config, "'--beta-step': need step > 0 and beta-max >= beta-min");
        }
        auto count = static_cast<long>(std::floor((*opt.beta_max - *opt.beta_min) / opt.beta_step + 1e-9)) + 1;
        for (long i = 0; i < count; ++i) {
            ops.push_back(with_beta(cfg.op, *opt.beta_min + static_cast<double>(i) * opt.beta_step));
        }
        config["sweep"] = {{"beta_min", *opt.beta_min}, {"beta_max", *opt.beta_max}, {"beta_step", opt.beta_step}};
    } else {
        ops.push_back(cfg.op);
    }

    SolveOptions so;
    so.damping = opt.damping;
    so.max_iter = opt.max_iter;
    std::vector<std::vector<SolveReport>> results(ops.size());
    parallel_for(ops.size(), [&](std::size_t i) { results[i] = multi_start_solve(ops[i], cfg.q, cfg.d, ansatz, so); });

    std::string text = csv_header(config);
    text += "beta,branch";
    for (int k = 0; k < cfg.q; ++k) {
        text += fmt::format(",a_{}", k);
    }
    text += ",residual,iterations\n";
    for (std::size_t i = 0; i < ops.size(); ++i) {
        for (const auto& r : results[i]) {
            text += num(op_beta(ops[i])) + "," + std::string(to_string(r.branch_label));
            for (double a : r.solution.values()) {
                text += "," + num(a);
            }
            text += "," + num(r.residual) + "," + std::to_string(r.iterations) + "\n";
        }
    }
    out.write(text);
    return exit_ok;
}

int cmd_critical_beta(const Options& opt, Output& out)
{
    Ansatz ansatz = parse_ansatz(opt.ansatz);
    json config = base_config("critical-beta", opt, nullptr);
    config["q"] = opt.q;
    config["d"] = opt.d;
    config["ansatz"] = opt.ansatz;
    config["potential_family"] = "sos";
    double bc = critical_beta(opt.q, opt.d, ansatz);
    json body{{"critical_beta", bc}, {"effective_threshold", effective_threshold(opt.q, opt.d, ansatz)}};
    out.write(json_document(config, body));
    return exit_ok;
}

int cmd_marginal(const Options& opt, Output& out)
{
    auto p = prepare("marginal", opt, -1);
    p.config["depth"] = opt.depth;
    p.config["edges"] = opt.edges;
    p.config["budget"] = opt.budget;
    auto spec = make_ggm_spec(*p.kernel, FiniteTreeVolume::ball(p.cfg.d, opt.depth));
    auto table = ggm_marginal(spec, opt.edges, EnumerationBudget{opt.budget});
    json rows = json::array();
    for (const auto& [key, prob] : table) {
        rows.push_back({{"increments", key}, {"probability", prob}});
    }
    out.write(json_document(p.config, {{"edges", opt.edges}, {"table", rows}}));
    return exit_ok;
}

int cmd_sample(const Options& opt, Output& out)
{
    auto p = prepare("sample", opt, -1);
    p.config["depth"] = opt.depth;
    p.config["n"] = opt.n;
    auto spec = make_ggm_spec(*p.kernel, FiniteTreeVolume::ball(p.cfg.d, opt.depth));
    auto samples = sample_ggm(spec, opt.seed, opt.n);
    std::string text = csv_header(p.config);
    text += "sample,edge,increment\n";
    for (std::size_t i = 0; i < samples.size(); ++i) {
        for (std::size_t e = 0; e < samples[i].increments.size(); ++e) {
            text += fmt::format("{},{},{}\n", i, e, samples[i].increments[e]);
        }
    }
    out.write(text);
    return exit_ok;
}

int cmd_verify(const Options& opt, Output& out)
{
    auto p = prepare("verify", opt, 3);
    p.config["depth"] = opt.verify_depth;
    p.config["budget"] = opt.budget;
    EnumerationBudget budget{opt.budget};
    const auto& k = *p.kernel;
    auto vol = FiniteTreeVolume::ball(p.cfg.d, opt.verify_depth);
    auto spec = make_ggm_spec(k, vol);

    json checks = json::array();
    bool all = true;
    auto record = [&](const std::string& name, const std::string& identity, double violation) {
        bool ok = violation <= opt.tol;
        all = all && ok;
        checks.push_back({{"name", name},
                          {"identity", identity},
                          {"violation", violation},
                          {"tolerance", opt.tol},
                          {"passed", ok}});
    };

    record("boundary_law", "a_k = c (sum_m T_q Q(k - m) a_m)^d", residual(p.law, p.op, p.cfg.d));
    record("reversibility", "alpha(i) Pbar(i, z) = alpha(i + z) Pbar(i + z, -z)", check_reversibility(k, spec.chain));
    auto gaps = compare_representations(spec, budget);
    record("pinned_representations", "prod Pbar = c l(boundary) prod Q", gaps.pinned);
    record("mixture_representations", "sum_s alpha(s) prod Pbar = c sum_k l(k + boundary) prod Q", gaps.ggm);
    record("normalization", "windowed masses sum to 1",
           std::max({gaps.product_mass_error, gaps.bl_mass_error, gaps.ggm_mass_error, gaps.alt_mass_error}));

    auto leaves = vol.boundary();
    auto grown = vol.grown(leaves.front());
    std::vector<int> inner_set;
    for (int v = 0; v < vol.size(); ++v) {
        inner_set.push_back(v);
    }
    record("consistency", "marginal of the grown volume equals the measure on the volume",
           check_consistency(PinnedMeasureSpec{k, grown, 0, 0}, inner_set, budget));
    std::vector<int> pins{0, vol.size() > 1 ? 1 : 0, vol.size() - 1};
    record("homogeneity", "mixture independent of the pin vertex", check_homogeneity(spec, pins, budget));
    if (opt.verify_depth >= 2) {
        std::vector<int> star{vol.parent(1), 1};
        for (int c : vol.children(1)) {
            star.push_back(c);
        }
        auto dlr = check_restricted_dlr(PinnedMeasureSpec{k, vol, vol.size() - 1, 0}, star, budget);
        record("restricted_dlr", "conditional inside a pin-free volume is prod Q on its height class", dlr.max());
    }
    out.write(json_document(p.config, {{"checks", checks}, {"passed", all}}));
    return all ? exit_ok : exit_verification_failed;
}

int cmd_correlation(const Options& opt, Output& out)
{
    auto p = prepare("correlation", opt, -1);
    p.config["nmax"] = opt.nmax;
    p.config["zeta_a"] = opt.zeta_a;
    p.config["zeta_b"] = opt.zeta_b;
    auto chain = fuzzy_transform(*p.kernel);
    LocalEvent A{FiniteTreeVolume::path(p.cfg.d, 1), 1, GradientConfiguration{{opt.zeta_a}}};
    LocalEvent B{FiniteTreeVolume::path(p.cfg.d, 1), 0, GradientConfiguration{{opt.zeta_b}}};
    std::string text = csv_header(p.config);
    text += "n,covariance,bound\n";
    for (int n = 1; n <= opt.nmax; ++n) {
        auto r = correlation_and_bound(*p.kernel, chain, A, B, n);
        text += fmt::format("{},{},{}\n", n, num(r.covariance), num(r.bound));
    }
    out.write(text);
    return exit_ok;
}

int cmd_counterexample(const Options& opt, Output& out)
{
    json config = base_config("counterexample", opt, nullptr);
    config["eps0"] = opt.eps0;
    config["eps1"] = opt.eps1;
    config["kmax"] = opt.kmax;
    CounterexampleChain ce(opt.eps0, opt.eps1);
    std::string text = csv_header(config);
    text += "k,ratio_closed_form,ratio_enumerated\n";
    for (int k = 1; k <= opt.kmax; ++k) {
        text += fmt::format("{},{},{}\n", k, num(counterexample_conditional_ratio(ce, k, k)),
                            num(counterexample_ratio_enumerated(ce, k, k)));
    }
    out.write(text);
    return exit_ok;
}

int cmd_chain_dump(const Options& opt, Output& out)
{
    auto p = prepare("chain dump", opt, -1);
    const auto& k = *p.kernel;
    auto chain = fuzzy_transform(k);
    json rows = json::array();
    for (int s = 0; s < k.period(); ++s) {
        rows.push_back(k.row(s));
    }
    json body{{"cutoff", k.cutoff()},
              {"kernel_rows", rows},
              {"truncation_deficit", k.deficit()},
              {"fuzzy_matrix", chain.matrix},
              {"alpha", chain.alpha},
              {"alpha_eigen", stationary_distribution(chain.matrix)},
              {"reversibility_violation", check_reversibility(k, chain)},
              {"second_eigen_modulus", second_eigen_modulus(chain.matrix)}};
    out.write(json_document(p.config, body));
    return exit_ok;
}

int exit_code_for(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::invalid_argument:
    case ErrorKind::config:
    case ErrorKind::unsupported_degree:
    case ErrorKind::unsupported_period:
    case ErrorKind::period_mismatch:
    case ErrorKind::pin_inside_inner:
    case ErrorKind::out_of_window: return exit_config_error;
    default: return exit_numerical_failure;
    }
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Options opt;
    CLI::App app{"Gradient Gibbs measures on regular trees from periodic boundary laws", "ggm"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--model", opt.model_path, "Model JSON file");
    app.add_option("--seed", opt.seed, "Random seed");
    app.add_option("--window", opt.window, "Increment cutoff M; restricts the potential to |m| <= M");
    app.add_option("--tol", opt.tol, "Tolerance for verification checks");
    app.add_option("--out", opt.out, "Output file (default: stdout)");
    app.add_option("--perturb", opt.perturb, "Scale a_1 of the boundary law by (1 + p)");
    app.add_option("--budget", opt.budget, "Maximum number of enumerated configurations");
    app.add_option("--ansatz", opt.ansatz, "generic or q4_paired");

    auto* solve = app.add_subcommand("solve-bl", "Solve the periodic boundary-law equation over a beta sweep");
    solve->add_option("--beta-min", opt.beta_min);
    solve->add_option("--beta-max", opt.beta_max);
    solve->add_option("--beta-step", opt.beta_step);
    solve->add_option("--damping", opt.damping);
    solve->add_option("--max-iter", opt.max_iter);

    auto* crit = app.add_subcommand("critical-beta", "Critical SOS beta for q = 2, 3 or paired q = 4");
    crit->add_option("--q", opt.q);
    crit->add_option("--d", opt.d);

    auto* marg = app.add_subcommand("marginal", "Exact increment marginals on a ball");
    marg->add_option("--depth", opt.depth);
    marg->add_option("--edges", opt.edges)->delimiter(',');

    auto* samp = app.add_subcommand("sample", "Sample gradient configurations on a ball");
    samp->add_option("--depth", opt.depth);
    samp->add_option("--n", opt.n);

    auto* ver = app.add_subcommand("verify", "Run the identity checks on a ball");
    ver->add_option("--depth", opt.verify_depth);

    auto* corr = app.add_subcommand("correlation", "Single-bond covariance and its mixing bound");
    corr->add_option("--nmax", opt.nmax);
    corr->add_option("--zeta-a", opt.zeta_a);
    corr->add_option("--zeta-b", opt.zeta_b);

    auto* ce = app.add_subcommand("counterexample", "Conditional ratios of the one-dimensional mixture");
    ce->add_option("--eps0", opt.eps0);
    ce->add_option("--eps1", opt.eps1);
    ce->add_option("--kmax", opt.kmax);

    auto* chain = app.add_subcommand("chain", "Kernel and fuzzy chain inspection");
    chain->require_subcommand(1);
    auto* dump = chain->add_subcommand("dump", "Print kernel rows, fuzzy matrix and alpha as JSON");
    dump->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "ggm: " << e.what() << "\n";
        return exit_config_error;
    }

    Output sink(opt, out);
    try {
        if (*solve) {
            return cmd_solve_bl(opt, sink);
        }
        if (*crit) {
            return cmd_critical_beta(opt, sink);
        }
        if (*marg) {
            return cmd_marginal(opt, sink);
        }
        if (*samp) {
            return cmd_sample(opt, sink);
        }
        if (*ver) {
            return cmd_verify(opt, sink);
        }
        if (*corr) {
            return cmd_correlation(opt, sink);
        }
        if (*ce) {
            return cmd_counterexample(opt, sink);
        }
        if (*dump) {
            return cmd_chain_dump(opt, sink);
        }
    } catch (const Error& e) {
        err << "ggm: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "ggm: " << e.what() << "\n";
        return exit_numerical_failure;
    }
    return exit_config_error;
}

} // namespace ggm
