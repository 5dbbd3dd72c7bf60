// nilbaer command line: exact ranks and explicit bases of multipliers of
// free nilpotent groups, plus a `verify` mode that cross-checks every closed
// form against brute-force enumeration and the free Lie-ring oracle.
//
// Exit codes: 0 success, 1 hypothesis violation, 2 invalid input,
// 3 verification failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "nilbaer/nilbaer.hpp"

namespace {

using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_hypothesis = 1;
constexpr int exit_invalid = 2;
constexpr int exit_verify_failed = 3;

// Envelope keys are fixed: command, params, hypotheses, result, version.
// nlohmann::json objects iterate key-sorted, so serialization is stable and
// identical inputs yield byte-identical output. Computed exact integers are
// emitted as decimal strings; they routinely exceed 64 bits.
void emit(const std::string& command, json params, json hypotheses, json result) {
    const json envelope{{"command", command},
                        {"params", std::move(params)},
                        {"hypotheses", std::move(hypotheses)},
                        {"result", std::move(result)},
                        {"version", nilbaer::version}};
    std::cout << envelope.dump(2) << "\n";
}

void require_flag(bool ok, const std::string& message) {
    if (!ok)
        throw nilbaer::invalid_input(message);
}

json hypotheses_json(const nilbaer::HypothesisReport& r) {
    return json{{"h1", r.h1},
                {"h2", r.h2},
                {"case", r.overlap == nilbaer::OverlapCase::disjoint ? "disjoint" : "overlapping"},
                {"violations", r.violations},
                {"derived", r.derived}};
}

struct WittArgs {
    int weight = 0;
    long gens = 0;
    std::string format = "json";
};

int cmd_witt(const WittArgs& a) {
    require_flag(a.weight >= 1, "--weight must be >= 1, got " + std::to_string(a.weight));
    require_flag(a.gens >= 0, "--gens must be >= 0, got " + std::to_string(a.gens));
    const mpz_class value = nilbaer::witt(a.weight, a.gens);
    if (a.format == "tsv") {
        std::cout << value.get_str() << "\n";
    } else {
        emit("witt", json{{"weight", a.weight}, {"gens", a.gens}}, nullptr, value.get_str());
    }
    return exit_ok;
}

struct BasisArgs {
    int gens = 0;
    int min_weight = 0;
    int max_weight = 0;
    std::string format = "json";
};

int cmd_basis(const BasisArgs& a) {
    require_flag(a.gens >= 1, "--gens must be >= 1, got " + std::to_string(a.gens));
    require_flag(a.min_weight >= 1, "--min must be >= 1, got " + std::to_string(a.min_weight));
    require_flag(a.min_weight <= a.max_weight, "--min must not exceed --max, got " +
                                                   std::to_string(a.min_weight) + " > " +
                                                   std::to_string(a.max_weight));
    nilbaer::BasisGenerator gen(a.gens);
    if (a.format == "tsv") {
        // stream weight by weight so large listings never build one giant buffer
        for (int w = a.min_weight; w <= a.max_weight; ++w)
            for (const nilbaer::CommutatorRef c : gen.slice(w))
                std::cout << nilbaer::to_string(c) << "\t" << w << "\n";
        return exit_ok;
    }
    json elements = json::array();
    for (int w = a.min_weight; w <= a.max_weight; ++w)
        for (const nilbaer::CommutatorRef c : gen.slice(w))
            elements.push_back(nilbaer::to_string(c));
    emit("basis",
         json{{"gens", a.gens}, {"min", a.min_weight}, {"max", a.max_weight}},
         nullptr, std::move(elements));
    return exit_ok;
}

struct SetsArgs {
    int n = 0, c1 = 0, c2 = 0, gens = 0;
    std::string which = "A";
    std::string format = "json";
};

nilbaer::SetKind parse_kind(const std::string& which) {
    if (which == "A")
        return nilbaer::SetKind::A;
    if (which == "B")
        return nilbaer::SetKind::B;
    if (which == "C")
        return nilbaer::SetKind::C;
    if (which == "A_cap_C")
        return nilbaer::SetKind::AIntersectC;
    if (which == "A_minus_C")
        return nilbaer::SetKind::AMinusC;
    throw nilbaer::invalid_input("--which must be one of A, B, C, A_cap_C, A_minus_C, got '" +
                                 which + "'");
}

void require_multiplier_flags(int n, int c1, int c2, int gens) {
    require_flag(gens >= 1, "--gens must be >= 1, got " + std::to_string(gens));
    require_flag(n >= 1, "--n must be >= 1, got " + std::to_string(n));
    require_flag(c1 >= 1, "--c1 must be >= 1, got " + std::to_string(c1));
    require_flag(c2 >= 1, "--c2 must be >= 1, got " + std::to_string(c2));
}

int cmd_sets(const SetsArgs& a) {
    require_multiplier_flags(a.n, a.c1, a.c2, a.gens);
    const nilbaer::SetKind kind = parse_kind(a.which);
    const nilbaer::MultiplierParams p{a.gens, a.n, a.c1, a.c2};
    const nilbaer::PairSet set = nilbaer::enumerate_set(p, kind);
    if (a.format == "tsv") {
        for (const auto& pr : set.pairs)
            std::cout << nilbaer::to_string(pr) << "\t" << nilbaer::pair_weight(pr) << "\n";
        return exit_ok;
    }
    json pairs = json::array();
    for (const auto& pr : set.pairs)
        pairs.push_back(nilbaer::to_string(pr));
    emit("sets",
         json{{"n", a.n}, {"c1", a.c1}, {"c2", a.c2}, {"gens", a.gens}, {"which", a.which}},
         hypotheses_json(nilbaer::check_hypotheses(p)),
         json{{"count", set.pairs.size()}, {"kind", nilbaer::to_string(kind)},
              {"pairs", std::move(pairs)}});
    return exit_ok;
}

struct RankVArgs {
    int n = 0, c1 = 0, c2 = 0, gens = 0;
    std::string format = "json";
};

int cmd_rank_v(const RankVArgs& a) {
    require_multiplier_flags(a.n, a.c1, a.c2, a.gens);
    const nilbaer::MultiplierParams p{a.gens, a.n, a.c1, a.c2};
    const nilbaer::HypothesisReport report = nilbaer::check_hypotheses(p);
    const json params{{"n", a.n}, {"c1", a.c1}, {"c2", a.c2}, {"gens", a.gens}};
    if (!report.ok()) {
        if (a.format == "tsv") {
            for (const auto& v : report.violations)
                std::cout << v << "\n";
        } else {
            emit("rank v", params, hypotheses_json(report), nullptr);
        }
        for (const auto& v : report.violations)
            std::cerr << "hypothesis violation: " << v << "\n";
        return exit_hypothesis;
    }
    const mpz_class k = nilbaer::multiplier_rank(p);
    if (a.format == "tsv")
        std::cout << k.get_str() << "\n";
    else
        emit("rank v", params, hypotheses_json(report), k.get_str());
    return exit_ok;
}

struct RankPolyArgs {
    int n = 0, gens = 0;
    std::vector<int> classes;
    std::string format = "json";
};

int cmd_rank_poly(const RankPolyArgs& a) {
    require_flag(a.gens >= 1, "--gens must be >= 1, got " + std::to_string(a.gens));
    require_flag(a.n >= 1, "--n must be >= 1, got " + std::to_string(a.n));
    require_flag(!a.classes.empty(), "--classes must list at least one class");
    for (const int c : a.classes)
        require_flag(c >= 1, "--classes entries must be >= 1, got " + std::to_string(c));
    const json params{{"n", a.n}, {"classes", a.classes}, {"gens", a.gens}};
    const bool gate = a.classes.front() >= a.n;
    json hyp{{"c1_ge_n", gate}, {"violations", json::array()}};
    if (!gate) {
        const std::string violation = "c1 >= n violated: " + std::to_string(a.classes.front()) +
                                      " < " + std::to_string(a.n);
        hyp["violations"].push_back(violation);
        if (a.format == "tsv")
            std::cout << violation << "\n";
        else
            emit("rank poly", params, std::move(hyp), nullptr);
        std::cerr << "hypothesis violation: " << violation << "\n";
        return exit_hypothesis;
    }
    const mpz_class r = nilbaer::polynilpotent_rank({a.gens, a.n, a.classes});
    if (a.format == "tsv")
        std::cout << r.get_str() << "\n";
    else
        emit("rank poly", params, std::move(hyp), r.get_str());
    return exit_ok;
}

struct AbelianArgs {
    long rank = -1;
    std::vector<long> torsion;
    int klass = 0;
    std::string format = "json";
};

int cmd_abelian(const AbelianArgs& a) {
    require_flag(a.rank >= 0, "--rank must be >= 0, got " + std::to_string(a.rank));
    require_flag(a.klass >= 1, "--class must be >= 1, got " + std::to_string(a.klass));
    for (const long n : a.torsion)
        require_flag(n >= 2, "--torsion moduli must be >= 2, got " + std::to_string(n));
    for (std::size_t i = 1; i < a.torsion.size(); ++i)
        require_flag(a.torsion[i - 1] % a.torsion[i] == 0,
                     "--torsion must be a divisibility chain: " + std::to_string(a.torsion[i]) +
                         " does not divide " + std::to_string(a.torsion[i - 1]));
    const nilbaer::AbelianDecomposition d =
        nilbaer::abelian_multiplier({a.rank, a.torsion}, a.klass);
    if (a.format == "tsv") {
        std::cout << "Z\t" << d.free_rank.get_str() << "\n";
        for (const auto& f : d.cyclic_factors)
            std::cout << "Z/" << f.modulus << "\t" << f.multiplicity.get_str() << "\n";
        return exit_ok;
    }
    json factors = json::array();
    for (const auto& f : d.cyclic_factors)
        factors.push_back(json{{"modulus", f.modulus}, {"multiplicity", f.multiplicity.get_str()}});
    emit("multiplier abelian",
         json{{"rank", a.rank}, {"torsion", a.torsion}, {"class", a.klass}}, nullptr,
         json{{"free_rank", d.free_rank.get_str()}, {"factors", std::move(factors)}});
    return exit_ok;
}

struct VerifyArgs {
    nilbaer::verify::Options options;
    std::string format = "json";
};

int cmd_verify(const VerifyArgs& a) {
    require_flag(a.options.max_gens >= 1, "--max-gens must be >= 1");
    require_flag(a.options.max_n >= 1, "--max-n must be >= 1");
    require_flag(a.options.max_class >= 1, "--max-class must be >= 1");
    require_flag(a.options.max_weight >= 1, "--max-weight must be >= 1");
    require_flag(a.options.random_triples >= 0, "--triples must be >= 0");
    require_flag(a.options.pair_cap >= 1, "--cap must be >= 1");
    const nilbaer::verify::Report report = nilbaer::verify::run(a.options);
    if (a.format == "tsv") {
        for (const auto& s : report.suites)
            std::cout << s.name << "\t" << s.checks << "\t" << s.failures << "\n";
        for (const auto& f : report.failures)
            std::cout << "FAIL\t" << f.suite << "\t" << f.point << "\texpected " << f.expected
                      << "\tgot " << f.actual << "\n";
        std::cout << (report.ok() ? "OK" : "FAILURES") << "\n";
    } else {
        json suites = json::array();
        for (const auto& s : report.suites)
            suites.push_back(json{{"name", s.name}, {"checks", s.checks}, {"failures", s.failures}});
        json failures = json::array();
        for (const auto& f : report.failures)
            failures.push_back(json{{"suite", f.suite},
                                    {"point", f.point},
                                    {"expected", f.expected},
                                    {"actual", f.actual}});
        json params{{"max_gens", a.options.max_gens},
                    {"max_n", a.options.max_n},
                    {"max_class", a.options.max_class},
                    {"max_weight", a.options.max_weight},
                    {"triples", a.options.random_triples},
                    {"seed", a.options.seed},
                    {"cap", a.options.pair_cap},
                    {"suites", a.options.suites.empty() ? nilbaer::verify::suite_names()
                                                        : a.options.suites}};
        if (!a.options.mutate.empty())
            params["mutate"] = a.options.mutate;
        emit("verify", std::move(params), nullptr,
             json{{"ok", report.ok()}, {"suites", std::move(suites)},
                  {"failures", std::move(failures)}});
    }
    return report.ok() ? exit_ok : exit_verify_failed;
}

void add_format_flag(CLI::App* cmd, std::string& format) {
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "tsv"}))
        ->default_val("json");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact ranks and bases of multipliers of free nilpotent groups"};
    app.set_version_flag("--version", nilbaer::version);
    app.require_subcommand(1);

    WittArgs witt_args;
    CLI::App* witt = app.add_subcommand("witt", "Count basic commutators of one weight");
    witt->add_option("--weight", witt_args.weight, "Commutator weight")->required();
    witt->add_option("--gens", witt_args.gens, "Number of generators")->required();
    add_format_flag(witt, witt_args.format);

    BasisArgs basis_args;
    CLI::App* basis = app.add_subcommand("basis", "List basic commutators in a weight range");
    basis->add_option("--gens", basis_args.gens, "Number of generators")->required();
    basis->add_option("--min", basis_args.min_weight, "Minimum weight")->required();
    basis->add_option("--max", basis_args.max_weight, "Maximum weight")->required();
    add_format_flag(basis, basis_args.format);

    SetsArgs sets_args;
    CLI::App* sets = app.add_subcommand("sets", "Enumerate the pair families A, B, C");
    sets->add_option("--n", sets_args.n, "Nilpotency class of the base group")->required();
    sets->add_option("--c1", sets_args.c1, "First class parameter")->required();
    sets->add_option("--c2", sets_args.c2, "Second class parameter")->required();
    sets->add_option("--gens", sets_args.gens, "Number of generators")->required();
    sets->add_option("--which", sets_args.which, "A, B, C, A_cap_C or A_minus_C")->required();
    add_format_flag(sets, sets_args.format);

    CLI::App* rank = app.add_subcommand("rank", "Multiplier ranks");
    rank->require_subcommand(1);

    RankVArgs rank_v_args;
    CLI::App* rank_v = rank->add_subcommand("v", "Rank of the outer-commutator multiplier");
    rank_v->add_option("--n", rank_v_args.n, "Nilpotency class of the base group")->required();
    rank_v->add_option("--c1", rank_v_args.c1, "First class parameter")->required();
    rank_v->add_option("--c2", rank_v_args.c2, "Second class parameter")->required();
    rank_v->add_option("--gens", rank_v_args.gens, "Number of generators")->required();
    add_format_flag(rank_v, rank_v_args.format);

    RankPolyArgs rank_poly_args;
    CLI::App* rank_poly = rank->add_subcommand("poly", "Rank of the polynilpotent multiplier");
    rank_poly->add_option("--n", rank_poly_args.n, "Nilpotency class of the base group")
        ->required();
    rank_poly->add_option("--classes", rank_poly_args.classes, "Class row c1,c2,...,ct")
        ->required()
        ->delimiter(',');
    rank_poly->add_option("--gens", rank_poly_args.gens, "Number of generators")->required();
    add_format_flag(rank_poly, rank_poly_args.format);

    CLI::App* multiplier = app.add_subcommand("multiplier", "Nilpotent multipliers");
    multiplier->require_subcommand(1);

    AbelianArgs abelian_args;
    CLI::App* abelian = multiplier->add_subcommand(
        "abelian", "c-nilpotent multiplier of a finitely generated abelian group");
    abelian->add_option("--rank", abelian_args.rank, "Free rank")->required();
    abelian->add_option("--torsion", abelian_args.torsion,
                        "Torsion moduli n1,n2,... with n_{i+1} | n_i")
        ->delimiter(',');
    abelian->add_option("--class", abelian_args.klass, "Nilpotency class c")->required();
    add_format_flag(abelian, abelian_args.format);

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "Run the formula-vs-oracle suites");
    verify->add_option("--max-gens", verify_args.options.max_gens, "Largest alphabet");
    verify->add_option("--max-n", verify_args.options.max_n, "Largest base nilpotency class");
    verify->add_option("--max-class", verify_args.options.max_class, "Largest c1/c2");
    verify->add_option("--max-weight", verify_args.options.max_weight,
                       "Largest weight for the witt suite");
    verify->add_option("--triples", verify_args.options.random_triples,
                       "Random triples for the lie suite");
    verify->add_option("--seed", verify_args.options.seed, "Random seed for the lie suite");
    verify->add_option("--cap", verify_args.options.pair_cap,
                       "Refuse grids enumerating more pairs than this");
    verify->add_option("--suite", verify_args.options.suites,
                       "Suites to run (default: all)")
        ->delimiter(',');
    verify->add_option("--mutate", verify_args.options.mutate,
                       "Testing only: corrupt one comparison of this suite");
    add_format_flag(verify, verify_args.format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_invalid;
    }

    try {
        if (*witt)
            return cmd_witt(witt_args);
        if (*basis)
            return cmd_basis(basis_args);
        if (*sets)
            return cmd_sets(sets_args);
        if (*rank_v)
            return cmd_rank_v(rank_v_args);
        if (*rank_poly)
            return cmd_rank_poly(rank_poly_args);
        if (*abelian)
            return cmd_abelian(abelian_args);
        if (*verify)
            return cmd_verify(verify_args);
    } catch (const nilbaer::hypothesis_violation& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return exit_hypothesis;
    } catch (const nilbaer::invalid_input& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return exit_invalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_invalid;
    }
    return exit_invalid;
}
