#include "cli/scenario.hpp"

#include <CLI11.hpp>

#include <map>

namespace singprof::cli {

const char* command_name(Command command) {
    switch (command) {
    case Command::Constants: return "constants";
    case Command::Solve: return "solve";
    case Command::Phase: return "phase";
    case Command::Pohozaev: return "pohozaev";
    case Command::Classify: return "classify";
    case Command::Mb: return "mb";
    case Command::Crit: return "crit";
    }
    return "?";
}

namespace {

void add_common(CLI::App* sub, Scenario& sc) {
    sub->add_option("--n", sc.n, "dimension n >= 3")->required();
    sub->add_option("--s", sc.s, "weight exponent 0 < s < 2")->required();
    sub->add_option("--q", sc.q, "perturbation exponent q > 1")->required();
    sub->add_option("--mu", sc.mu, "perturbation coefficient mu >= 0")->required();
    sub->add_option("--tol", sc.tol, "integration / quadrature tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--out", sc.out, "write the JSON report here instead of stdout");
    sub->add_option("--trace", sc.trace, "write a CSV trace here");
    const std::map<std::string, Space> spaces{{"r", Space::Radial}, {"ef", Space::EF}};
    sub->add_option("--space", sc.space, "trace variables: r (r,u) or ef (t,v,dv)")
        ->transform(CLI::CheckedTransformer(spaces, CLI::ignore_case));
    sub->add_flag("--verify", sc.verify, "run the invariant checks on the produced objects");
}

void add_state(CLI::App* sub, Scenario& sc) {
    sub->add_option("--v0", sc.v0, "initial v");
    sub->add_option("--dv0", sc.dv0, "initial v'");
    sub->add_option("--t0", sc.t0, "initial Emden-Fowler time t = -ln r");
    sub->add_option("--tend", sc.t_end, "final Emden-Fowler time");
    sub->add_option("--stride", sc.stride, "sample spacing in t (0: every step)")
        ->check(CLI::NonNegativeNumber);
}

} // namespace

ParseOutcome parse_args(int argc, const char* const* argv) {
    Scenario sc;
    CLI::App app{"Singular radial profiles: constants, orbits, Pohozaev invariants, classification"};
    app.require_subcommand(1);

    auto* constants = app.add_subcommand("constants", "exponents, constants and thresholds");
    add_common(constants, sc);

    auto* solve = app.add_subcommand("solve", "integrate an Emden-Fowler orbit");
    add_common(solve, sc);
    add_state(solve, sc);

    auto* phase = app.add_subcommand("phase", "turning points and periods of the limit equation");
    add_common(phase, sc);
    phase->add_option("--K,--kgrid", sc.k_levels, "Hamiltonian level(s), comma separated")
        ->delimiter(',')
        ->required();
    phase->add_option("--workers", sc.workers, "parallel workers for a K grid")->check(CLI::PositiveNumber);

    auto* pohozaev = app.add_subcommand("pohozaev", "Pohozaev surface integrals and identity");
    add_common(pohozaev, sc);
    add_state(pohozaev, sc);
    pohozaev->add_option("--profile", sc.profile, "bubble|homoclinic|periodic|constant|nd|crit-constant|solve")
        ->required()
        ->check(CLI::IsMember({"bubble", "homoclinic", "periodic", "constant", "nd", "crit-constant", "solve"}));
    pohozaev->add_option("--lambda", sc.lambda, "bubble scale");
    pohozaev->add_option("--K", sc.k_levels, "level of the periodic orbit")->delimiter(',');
    pohozaev->add_option("--radii", sc.radii, "radii for P_r, comma separated (default 0.1,1,10 or across the orbit span)")->delimiter(',');
    pohozaev->add_option("--r1", sc.r1, "inner radius of the identity check");
    pohozaev->add_option("--r2", sc.r2, "outer radius of the identity check");
    pohozaev->add_flag("--asymptotic", sc.asymptotic, "estimate lim P_r as r -> 0");

    auto* classify = app.add_subcommand("classify", "classify a trace");
    add_common(classify, sc);
    auto* input = classify->add_option("--input", sc.input, "CSV with header r,u");
    classify->add_option("--profile", sc.profile, "bubble|periodic|constant|nd|mb")
        ->check(CLI::IsMember({"bubble", "periodic", "constant", "nd", "mb"}))
        ->excludes(input);
    classify->add_option("--lambda", sc.lambda, "bubble scale");
    classify->add_option("--K", sc.k_levels, "level of the periodic orbit")->delimiter(',');
    classify->add_option("--r0", sc.r0, "first multi-bump radius");
    classify->add_option("--count", sc.count, "number of multi-bump radii");
    classify->add_option("--rmin", sc.r_min, "smallest radius of generated traces")->check(CLI::PositiveNumber);
    classify->add_option("--per-decade", sc.per_decade, "grid density")->check(CLI::PositiveNumber);

    auto* mb = app.add_subcommand("mb", "multi-bump radii, recurrence fit and bubble sum");
    add_common(mb, sc);
    mb->add_option("--r0", sc.r0, "first radius, 0 < r0 < 1");
    mb->add_option("--count", sc.count, "number of radii");
    mb->add_option("--per-decade", sc.per_decade, "trace grid density")->check(CLI::PositiveNumber);

    auto* crit = app.add_subcommand("crit", "critical case q = 2*-1: thresholds and orbit class");
    add_common(crit, sc);
    add_state(crit, sc);

    ParseOutcome outcome;
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        outcome.message = app.help();
        return outcome;
    } catch (const CLI::CallForAllHelp&) {
        outcome.message = app.help("", CLI::AppFormatMode::All);
        return outcome;
    } catch (const CLI::ParseError& e) {
        outcome.exit_code = 2;
        outcome.usage_error = true;
        outcome.message = e.what();
        return outcome;
    }

    const std::pair<CLI::App*, Command> table[] = {
        {constants, Command::Constants}, {solve, Command::Solve},       {phase, Command::Phase},
        {pohozaev, Command::Pohozaev},   {classify, Command::Classify}, {mb, Command::Mb},
        {crit, Command::Crit}};
    for (const auto& [sub, command] : table) {
        if (sub->parsed()) sc.command = command;
    }
    if (sc.command == Command::Classify && !sc.input && sc.profile.empty()) {
        outcome.exit_code = 2;
        outcome.usage_error = true;
        outcome.message = "classify needs --input or --profile";
        return outcome;
    }
    outcome.scenario = sc;
    return outcome;
}

} // namespace singprof::cli
