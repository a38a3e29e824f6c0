#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    using qh::cli::RunConfig;
    CLI::App app{"qh: local factor ratios, their Hankel and Toeplitz compressions, and Sonin spaces"};
    app.require_subcommand(1);
    RunConfig c;

    auto add_spec = [&](CLI::App* s) {
        s->add_option("--spec", c.spec, "inf, p:<prime>, gauss:<m>:<k>, phi:<m>:<k>, 1, joined by '*'")
            ->capture_default_str();
    };
    auto add_output = [&](CLI::App* s) {
        s->add_option("--format", c.format, "output format");
        s->add_option("-o,--output", c.output, "output file (stdout if omitted)");
    };

    auto* eval = app.add_subcommand("eval", "evaluate rho(spec, z)");
    add_spec(eval);
    eval->add_option("--z", c.z, "points as re,im (repeatable)")->required();

    auto* coeffs = app.add_subcommand("coeffs", "Fourier coefficients of kappa");
    add_spec(coeffs);
    coeffs->add_option("--kmax", c.kmax)->capture_default_str();
    coeffs->add_option("--method", c.method, "residue, quadrature or both")->capture_default_str();
    coeffs->add_option("--quadrature", c.quadrature, "line or dft")->capture_default_str();
    coeffs->add_option("--n-terms", c.n_terms, "prime-side residue terms")->capture_default_str();
    coeffs->add_option("--arch-terms", c.arch_terms)->capture_default_str();
    coeffs->add_option("--grid", c.grid, "dft grid size")->capture_default_str();
    coeffs->add_option("--offset", c.offset)->capture_default_str();

    auto* spectrum = app.add_subcommand("spectrum", "singular values of a truncation");
    add_spec(spectrum);
    spectrum->add_option("--n", c.n)->capture_default_str();
    spectrum->add_option("--kind", c.kind, "hankel, toeplitz or pole-space")->capture_default_str();
    spectrum->add_option("--n-terms", c.n_terms)->capture_default_str();
    spectrum->add_option("--arch-terms", c.arch_terms)->capture_default_str();

    auto* cls = app.add_subcommand("classify", "quasi-innerness verdict");
    add_spec(cls);
    cls->add_option("--sweep", c.sweep)->delimiter(',')->capture_default_str();

    auto* sonin = app.add_subcommand("sonin", "near-kernel of u22 over a truncation sweep");
    sonin->add_option("--places", c.places, "place set, e.g. inf,2")->delimiter(',')->capture_default_str();
    sonin->add_option("--target", c.target, "larger place set for the inductive map check")->delimiter(',');
    sonin->add_option("--sweep", c.sweep)->delimiter(',');
    sonin->add_option("--eps", c.eps)->capture_default_str();

    auto* figure = app.add_subcommand("figure", "image of the unit circle under kappa or its pole part");
    add_spec(figure);
    figure->add_flag("--pole-part", c.pole_part);
    figure->add_option("--grid", c.grid)->capture_default_str();
    figure->add_option("--offset", c.offset)->capture_default_str();
    // figure writes CSV unless told otherwise
    bool figure_default_format = true;

    auto* report = app.add_subcommand("report", "aggregate reproduction report");
    report->add_option("--tolerance", c.tolerance)->capture_default_str();
    report->add_option("--kmax", c.kmax)->capture_default_str();
    report->add_option("--sweep", c.sweep)->delimiter(',');

    add_output(eval);
    add_output(coeffs);
    add_output(spectrum);
    add_output(cls);
    add_output(sonin);
    add_output(figure);
    add_output(report);
    figure->callback([&] { figure_default_format = figure->count("--format") == 0; });
    sonin->callback([&] {
        if (sonin->count("--sweep") == 0) c.sweep = {64, 128, 256};
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    c.command = app.get_subcommands().front()->get_name();
    if (c.command == "figure" && figure_default_format) c.format = "csv";
    return qh::cli::run(c);
}
