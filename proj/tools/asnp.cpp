#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "asnp/binary_lemmas.hpp"
#include "asnp/boxes.hpp"
#include "asnp/c_series.hpp"
#include "asnp/explorer.hpp"
#include "asnp/slope_cert.hpp"

using namespace asnp;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

CurveEquation read_curve(const std::string& path)
{
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else if (!path.empty() && path.front() == '{') {
        text = path; // inline JSON
    } else {
        std::ifstream in(path);
        if (!in)
            throw UsageError("cannot open " + path);
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    try {
        return CurveEquation::from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::exception& err) {
        throw UsageError(path + ": " + err.what());
    }
}

std::set<int> parse_index_list(const std::string& text)
{
    std::set<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        try {
            out.insert(std::stoi(item));
        } catch (const std::exception&) {
            throw UsageError("bad index '" + item + "'");
        }
    }
    return out;
}

void print_line(const nlohmann::json& j) { std::cout << j.dump() << '\n'; }

/// The verbatim lift followed by `extra` random ones.
std::vector<LiftedCurve> lifts_of(const CurveEquation& c, unsigned K, unsigned extra, std::uint64_t seed)
{
    std::vector<LiftedCurve> out{LiftedCurve::verbatim(c, K)};
    std::mt19937_64 rng(seed);
    for (unsigned i = 0; i < extra; ++i)
        out.push_back(LiftedCurve::random(c, K, rng));
    return out;
}

int report_lemmas(const std::vector<LemmaReport>& reports)
{
    bool ok = true;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        nlohmann::json j = reports[i].to_json();
        j["lift"] = i;
        print_line(j);
        ok = ok && reports[i].holds();
    }
    return ok ? 0 : kExitViolation;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Newton polygons of binary Artin-Schreier curves"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "worker threads for sweeps (0: all cores)");
    int exit_code = 0;

    const auto cache = [] { return CountCache::from_env(); };

    // np
    auto* np_cmd = app.add_subcommand("np", "L-polynomial and Newton polygon of one curve");
    std::string np_curve;
    np_cmd->add_option("curve", np_curve, "curve JSON: a file, '-' for stdin, or inline text")->required();
    np_cmd->callback([&] {
        auto store = cache();
        CurveEquation c = read_curve(np_curve);
        if (!c.is_odd_reduced())
            c = reduce_odd(c);
        if (!c.is_monic())
            c = make_monic(c, true);
        const auto rec = classify_one(c, store.get());
        print_line(rec.to_json());
        exit_code = rec.consistent ? 0 : kExitViolation;
    });

    // classify
    auto* cl_cmd = app.add_subcommand("classify", "sweep odd monic normal forms and classify each");
    int cl_genus = 0;
    unsigned cl_ext = 1;
    std::string cl_zero;
    cl_cmd->add_option("--genus", cl_genus)->required()->check(CLI::Range(1, 12));
    cl_cmd->add_option("--ext", cl_ext, "field degree e of GF(2^e)")->required()->check(CLI::Range(1, 24));
    cl_cmd->add_option("--zero", cl_zero, "comma-separated odd indices forced to zero");
    cl_cmd->callback([&] {
        auto store = cache();
        const auto curves = enumerate_normal_forms(cl_genus, cl_ext, parse_index_list(cl_zero));
        bool ok = true;
        for (const auto& rec : classify(curves, {store.get(), threads})) {
            print_line(rec.to_json());
            ok = ok && rec.consistent;
        }
        exit_code = ok ? 0 : kExitViolation;
    });

    // reduce
    auto* red_cmd = app.add_subcommand("reduce", "odd monic normal form; optionally kill one coefficient");
    std::string red_curve;
    int red_kill = 0;
    unsigned red_searchdeg = 1;
    red_cmd->add_option("curve", red_curve)->required();
    red_cmd->add_option("--kill", red_kill, "odd index m < 2g to eliminate by translation");
    red_cmd->add_option("--searchdeg", red_searchdeg, "search translations in GF(2^(e*E))")->check(CLI::Range(1, 24));
    red_cmd->callback([&] {
        const CurveEquation c = make_monic(reduce_odd(read_curve(red_curve)), true);
        if (red_kill == 0) {
            print_line(c.to_json());
            return;
        }
        const KillResult kr = kill_coefficient(c, red_kill, red_searchdeg);
        nlohmann::json eqs = nlohmann::json::array();
        for (const auto& eq : kr.equations)
            eqs.push_back(eq.to_json());
        print_line({{"field", field_to_json(kr.field)},
                    {"translations_scanned", kr.translations_scanned},
                    {"twisted_translations", kr.twisted_translations},
                    {"equations", eqs}});
        exit_code = kr.equations.empty() ? kExitViolation : 0;
    });

    // cseries
    auto* cs_cmd = app.add_subcommand("cseries", "coefficients C_r of (1+4f)^((2^N-1)/2) for the verbatim lift");
    std::string cs_curve;
    unsigned cs_N = 0;
    std::size_t cs_R = 0;
    unsigned cs_K = 8;
    bool cs_stable = false;
    bool cs_recurrence = false;
    cs_cmd->add_option("curve", cs_curve)->required();
    cs_cmd->add_option("--N", cs_N)->check(CLI::Range(1u, 4096u));
    cs_cmd->add_option("--R", cs_R)->required();
    cs_cmd->add_option("--K", cs_K)->check(CLI::Range(1u, 62u));
    cs_cmd->add_flag("--stable", cs_stable, "exponent -1/2 instead of (2^N-1)/2");
    cs_cmd->add_flag("--recurrence", cs_recurrence, "linear-time coefficient recursion");
    cs_cmd->callback([&] {
        if (!cs_stable && cs_N == 0)
            throw UsageError("cseries needs --N or --stable");
        const LiftedCurve a = LiftedCurve::verbatim(read_curve(cs_curve), cs_K);
        const SeriesMethod method = cs_recurrence ? SeriesMethod::Recurrence : SeriesMethod::PowerSum;
        const TwoAdicSeries s = cs_stable ? c_series_stable(a, cs_R, method) : c_series(a, cs_N, cs_R, method);
        for (const auto& entry : ord_profile(s)) {
            print_line({{"r", entry.r},
                        {"residue", s.term(entry.r).coeffs},
                        {"ord2", entry.at_least_K ? nlohmann::json("geK") : nlohmann::json(entry.ord)}});
        }
    });

    // bound
    auto* bd_cmd = app.add_subcommand("bound", "coefficient-count bound on the supersingular locus");
    int bd_genus = 0;
    bd_cmd->add_option("--genus", bd_genus)->required()->check(CLI::Range(3, 64));
    bd_cmd->callback([&] { print_line(supersingular_parameter_bound(bd_genus).to_json()); });

    // verify
    auto* vf = app.add_subcommand("verify", "checks that exit 1 on a violation");
    vf->require_subcommand(1);

    auto* mir = vf->add_subcommand("miracle", "digit-sum bound and equality cases over K_r");
    int mir_d = 7;
    std::uint64_t mir_r = 7;
    bool mir_upto = false;
    mir->add_option("--d", mir_d)->required()->check(CLI::Range(1, 64));
    mir->add_option("--r", mir_r)->required()->check(CLI::Range(std::uint64_t{0}, kIndexTupleCap));
    mir->add_flag("--upto", mir_upto, "check every r' <= r");
    mir->callback([&] {
        bool ok = true;
        for (std::uint64_t r = mir_upto ? 0 : mir_r; r <= mir_r; ++r) {
            const MiracleReport rep = check_miracle(mir_d, r);
            std::cout << (rep.holds() ? "PASS" : "FAIL") << " miracle d=" << mir_d << " r=" << r << " h=" << rep.h
                      << " tuples=" << rep.tuples << " bound=" << rep.bound << " min_s=" << rep.min_tuple_sum
                      << " equality_cases=" << rep.equality_cases;
            if (rep.counterexample)
                std::cout << " counterexample=" << rep.counterexample->to_string() << " (" << rep.failures.front()
                          << ")";
            std::cout << '\n';
            ok = ok && rep.holds();
        }
        exit_code = ok ? 0 : kExitViolation;
    });

    std::string lem_curve;
    int lem_bmin = 1;
    int lem_bmax = 3;
    int lem_bpmax = 3;
    unsigned lem_lifts = 0;
    std::uint64_t lem_seed = 1;
    bool lem_ring_power = false;
    const auto lemma_options = [&](CLI::App* cmd) {
        cmd->add_option("--curve", lem_curve)->required();
        cmd->add_option("--bmax", lem_bmax)->check(CLI::Range(1, 6));
        cmd->add_option("--lifts", lem_lifts, "random lifts in addition to the verbatim one");
        cmd->add_option("--seed", lem_seed);
    };
    const auto lemma_precision = [&] { return static_cast<unsigned>(lem_bmax) + 3; };

    auto* lb = vf->add_subcommand("lemma-b", "C_{2^{bh+b'}-2^{b'}} against C_{2^{bh}-1}");
    lemma_options(lb);
    lb->add_option("--bpmax", lem_bpmax)->check(CLI::Range(0, 6));
    lb->add_flag("--ring-power", lem_ring_power, "test the plain ring-power reading instead");
    lb->callback([&] {
        std::vector<LemmaReport> reps;
        for (const auto& a : lifts_of(read_curve(lem_curve), lemma_precision(), lem_lifts, lem_seed))
            reps.push_back(check_frobenius_shift(a, lem_bmax, lem_bpmax,
                                                 lem_ring_power ? ShiftReading::RingPower : ShiftReading::Frobenius));
        exit_code = report_lemmas(reps);
    });

    auto* lc = vf->add_subcommand("lemma-c", "C_{2^{bh}-1} for g < 2^h - 2");
    lemma_options(lc);
    lc->callback([&] {
        std::vector<LemmaReport> reps;
        for (const auto& a : lifts_of(read_curve(lem_curve), lemma_precision(), lem_lifts, lem_seed))
            reps.push_back(check_leading_congruence(a, lem_bmax));
        exit_code = report_lemmas(reps);
    });

    auto* ld = vf->add_subcommand("lemma-d", "C_{2^{bh}-1} recursion for g = 2^h - 2");
    lemma_options(ld);
    ld->add_option("--bmin", lem_bmin)->check(CLI::Range(1, 6));
    ld->callback([&] {
        std::vector<LemmaReport> reps;
        for (const auto& a : lifts_of(read_curve(lem_curve), lemma_precision(), lem_lifts, lem_seed))
            reps.push_back(check_telescoping(a, lem_bmin, lem_bmax));
        exit_code = report_lemmas(reps);
    });

    auto* kl = vf->add_subcommand("keylemma", "bounded check of the valuation criterion for NP_1");
    std::string kl_curve;
    std::string kl_lambda;
    CertificateQuery kl_query;
    bool kl_part2 = false;
    int kl_j = 1;
    int kl_n0 = 0;
    unsigned kl_K = 0;
    kl->add_option("--curve", kl_curve)->required();
    kl->add_option("--lambda", kl_lambda, "p/q in [0, 1/2]")->required();
    kl->add_option("--nmax", kl_query.n_max)->check(CLI::Range(1, 16));
    kl->add_option("--mmax", kl_query.m_max)->check(CLI::Range(std::uint64_t{1}, std::uint64_t{64}));
    kl->add_flag("--part2", kl_part2, "check the part-ii pattern at (n0, j)");
    kl->add_option("--j", kl_j);
    kl->add_option("--n0", kl_n0);
    kl->add_option("--K", kl_K, "working precision (default ceil(n lambda) + 2)");
    kl->callback([&] {
        kl_query.lambda = parse_rational(kl_lambda);
        if (kl_K != 0)
            kl_query.K = kl_K;
        CurveEquation c = read_curve(kl_curve);
        if (!c.is_odd_reduced() || !c.is_monic())
            throw UsageError("keylemma expects an odd-reduced monic curve");
        const LiftedCurve a = LiftedCurve::verbatim(c, GaloisRing::kMaxPrecision);
        SlopeBoundReport rep;
        if (kl_part2) {
            if (kl_n0 < 1)
                throw UsageError("--part2 needs --n0");
            kl_query.n0 = kl_n0;
            kl_query.j = kl_j;
            rep = keylemma_check_ii(a, kl_query);
        } else {
            rep = keylemma_check_i(a, kl_query);
        }
        print_line(rep.to_json());
        exit_code = rep.verdict == Verdict::ViolationFound ? kExitViolation : 0;
    });

    auto* geer = vf->add_subcommand("geer", "supersingularity of the sum of x^{2^i+1} family");
    int geer_n = 1;
    unsigned geer_ext = 1;
    std::size_t geer_samples = 0;
    std::uint64_t geer_seed = 1;
    geer->add_option("--n", geer_n, "genus 2^n")->check(CLI::Range(0, 4));
    geer->add_option("--ext", geer_ext)->check(CLI::Range(1, 24));
    geer->add_option("--samples", geer_samples, "random tuples; 0 sweeps all");
    geer->add_option("--seed", geer_seed);
    geer->callback([&] {
        auto store = cache();
        const GeerReport rep = verify_geer(geer_n, geer_ext, geer_samples, geer_seed, store.get());
        print_line(rep.to_json());
        exit_code = rep.holds() ? 0 : kExitViolation;
    });

    unsigned thm_ext = 1;
    bool thm_records = false;
    const auto sweep = [&](SweepReport (*run)(unsigned, const ClassifyOptions&)) {
        auto store = cache();
        const SweepReport rep = run(thm_ext, {store.get(), threads});
        if (thm_records) {
            for (const auto& rec : rep.records)
                print_line(rec.to_json());
        }
        print_line(rep.to_json());
        exit_code = rep.holds() ? 0 : kExitViolation;
    };
    for (auto [name, help, run] : {std::tuple{"thm1", "no supersingular genus-3 curves over GF(2^e)",
                                              &verify_no_supersingular_genus3},
                                   std::tuple{"thm2", "genus-4 curves with c_1 = 0: supersingular iff c_7 = 0",
                                              &verify_genus4_classification}}) {
        auto* cmd = vf->add_subcommand(name, help);
        cmd->add_option("--ext", thm_ext)->check(CLI::Range(1, 6));
        cmd->add_flag("--records", thm_records, "also print every classification record");
        cmd->callback([&sweep, run] { sweep(run); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        // a broken internal invariant counts as a violation
        std::cerr << "error: " << e.what() << '\n';
        return kExitViolation;
    }
    return exit_code;
}
