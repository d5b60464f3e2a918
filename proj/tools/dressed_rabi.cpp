// Command-line front end: spectra, dressed-gap curves, multiphoton resonance
// solutions, and method comparisons, emitted as CSV.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dressed_rabi/dressed_rabi.hpp"

namespace {

struct GridSpec {
    double lo = 0.0, hi = 1.0;
    long count = 201;
};

GridSpec parse_grid(const std::string& s)
{
    GridSpec g;
    char c1 = 0, c2 = 0;
    std::istringstream is(s);
    if (!(is >> g.lo >> c1 >> g.hi >> c2 >> g.count) || c1 != ':' || c2 != ':')
        throw CLI::ValidationError("grid", "expected lo:hi:count, got '" + s + "'");
    if (g.count < 1 || (g.count > 1 && !(g.lo < g.hi)))
        throw CLI::ValidationError("grid", "need lo < hi and count >= 1");
    return g;
}

std::vector<double> expand_grid(const GridSpec& g)
{
    std::vector<double> v(static_cast<std::size_t>(g.count));
    if (g.count == 1) {
        v[0] = g.lo;
        return v;
    }
    for (long i = 0; i < g.count; ++i)
        v[static_cast<std::size_t>(i)] = g.lo + (g.hi - g.lo) * i / static_cast<double>(g.count - 1);
    return v;
}

// Resolved physical inputs; config file values sit under explicit flags.
struct Params {
    std::optional<double> delta_e, u, g, n;
    std::string config_path;

    void add_flags(CLI::App* cmd, bool coupling_flags = true)
    {
        cmd->add_option("--delta-e", delta_e, "two-level splitting in units of hbar*omega0");
        cmd->add_option("--n", n, "photon number (scientific notation accepted)");
        if (coupling_flags) {
            cmd->add_option("--u", u, "coupling energy U");
            cmd->add_option("--g", g, "dimensionless coupling U sqrt(n)/delta_e");
        }
        cmd->add_option("--config", config_path, "key=value config file (delta_e, u, n, g)");
    }

    void merge_config()
    {
        if (config_path.empty())
            return;
        rabi::ModelParams file = rabi::load_params(config_path);
        if (!delta_e)
            delta_e = file.delta_e;
        if (!n)
            n = file.n;
        if (!u && !g)
            u = file.u;
    }

    double require_delta_e() const
    {
        if (!delta_e)
            throw CLI::ValidationError("--delta-e", "required");
        return *delta_e;
    }

    double require_n() const
    {
        if (!n)
            throw CLI::ValidationError("--n", "required");
        return *n;
    }

    // exactly one of u/g
    double resolve_u() const
    {
        if (u && g)
            throw CLI::ValidationError("--u/--g", "specify either u or g, not both");
        if (u)
            return *u;
        if (g)
            return rabi::params_with_g(require_delta_e(), require_n(), *g).u;
        throw CLI::ValidationError("--u/--g", "one of u or g is required");
    }
};

std::string stamp(const std::string& command, const std::vector<std::pair<std::string, std::string>>& kv)
{
    std::ostringstream os;
    os << "# config: command=" << command;
    for (const auto& [k, v] : kv)
        os << ' ' << k << '=' << v;
    os << '\n';
    return os.str();
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_output(const std::string& path, const std::string& content)
{
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write output file: " + path);
    out << content;
}

void emit_plot_script(const std::string& csv_path, const std::string& ylabel)
{
    if (csv_path.empty() || csv_path == "-")
        return;
    std::ofstream out(csv_path + ".plt");
    if (!out)
        throw std::runtime_error("cannot write plot script");
    out << "set datafile separator ','\n"
        << "set datafile commentschars '#'\n"
        << "set xlabel 'g'\n"
        << "set ylabel '" << ylabel << "'\n"
        << "set key left top\n"
        << "plot '" << csv_path << "' every ::1 using 1:2 with lines title 'dE(g)/dE'\n";
}

int run_dressed(const Params& params, const std::string& method_name, long k,
                const GridSpec& grid, const std::string& output, bool emit_plot)
{
    double de = params.require_delta_e();
    double n = params.require_n();
    rabi::Method method = rabi::parse_method(method_name, k);
    rabi::DressedCurve curve = rabi::dressed_curve(de, n, expand_grid(grid), method);
    std::ostringstream os;
    os << stamp("dressed", {{"delta_e", fmt(de)},
                            {"n", fmt(n)},
                            {"method", method.name()},
                            {"grid", fmt(grid.lo) + ":" + fmt(grid.hi) + ":" + std::to_string(grid.count)}});
    rabi::write_csv(os, curve);
    write_output(output, os.str());
    if (emit_plot)
        emit_plot_script(output, "dE(g)/dE");
    return 0;
}

int run_figure1(const std::string& output, bool emit_plot)
{
    // dE = 11 hbar*omega0, n = 1e8: WKB curve with the small-g series overlay
    const double de = 11.0, n = 1e8;
    std::vector<double> grid = expand_grid({0.0, 1.0, 201});
    rabi::DressedCurve wkb = rabi::dressed_curve(de, n, grid, {rabi::GapMethod::wkb});
    rabi::DressedCurve series = rabi::dressed_curve(de, n, grid, {rabi::GapMethod::series});
    std::ostringstream os;
    os << stamp("figure1", {{"delta_e", fmt(de)}, {"n", fmt(n)}, {"grid", "0:1:201"}});
    os.precision(17);
    os << "g,ratio,method,n,delta_e\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        os << grid[i] << ',' << wkb.ratio[i] << ",wkb," << n << ',' << de << '\n';
    for (std::size_t i = 0; i < grid.size(); ++i)
        os << grid[i] << ',' << series.ratio[i] << ",series," << n << ',' << de << '\n';
    write_output(output, os.str());
    if (emit_plot)
        emit_plot_script(output, "dE(g)/dE");
    return 0;
}

int run_spectrum(const Params& params, long n_max, const std::string& which,
                 const std::string& output, const std::string& dump_matrix)
{
    double de = params.require_delta_e();
    double u = params.resolve_u();
    if (n_max < 1 || n_max > 5000)
        throw CLI::ValidationError("--n-max", "must be in [1, 5000]");
    rabi::ModelParams mp(de, u, params.n.value_or(0.0));
    rabi::SpinFockBasis basis(n_max);
    std::optional<rabi::DenseSymmetric> h;
    if (which == "full")
        h = rabi::build_full_hamiltonian(mp, n_max);
    else if (which == "h0")
        h = rabi::build_rotated_parts(mp, n_max).h0;
    else if (which == "rotated")
        h = rabi::build_rotated_parts(mp, n_max).sum();
    else
        throw CLI::ValidationError("--operator", "must be full, h0, or rotated");
    if (!dump_matrix.empty()) {
        std::ofstream dump(dump_matrix);
        if (!dump)
            throw std::runtime_error("cannot write matrix dump");
        h->write_text(dump);
    }
    rabi::Spectrum s = rabi::spectrum_of(*h, basis);
    std::ostringstream os;
    os << stamp("spectrum", {{"delta_e", fmt(de)},
                             {"u", fmt(u)},
                             {"n_max", std::to_string(n_max)},
                             {"operator", which}});
    os.precision(17);
    os << "index,eigenvalue,dominant_n,dominant_m,parity\n";
    for (std::size_t j = 0; j < s.order; ++j)
        os << j << ',' << s.eigenvalues[j] << ',' << s.labels[j].fock_n << ','
           << (s.labels[j].m_twice > 0 ? "0.5" : "-0.5") << ',' << s.labels[j].parity << '\n';
    write_output(output, os.str());
    return 0;
}

int run_resonance(const Params& params, const std::vector<long>& k_list,
                  const std::string& method_name, const std::string& output, bool scan,
                  double u_lo, double u_hi, int scan_points, long scan_n_max)
{
    double de = params.require_delta_e();
    double n = params.require_n();
    std::ostringstream os;
    os << stamp("resonance", {{"delta_e", fmt(de)}, {"n", fmt(n)}, {"method", method_name}});
    os.precision(17);
    os << "k,method,g_star,residual\n";
    int successes = 0;
    for (long k : k_list) {
        rabi::Method method = rabi::parse_method(method_name, k);
        os << k << ',' << method.name() << ',';
        try {
            rabi::ResonanceSolution sol = rabi::resonance_coupling(de, n, k, method);
            os << sol.g_star << ',' << sol.residual << '\n';
            ++successes;
        } catch (const std::exception& e) {
            os << ",infeasible: " << e.what() << '\n';
        }
    }
    if (scan) {
        long n_target = rabi::fock_index(n);
        if (scan_n_max <= 0)
            scan_n_max = std::max(4 * n_target + 64, 256L);
        auto points = rabi::anticrossing_scan(de, n_target, u_lo, u_hi, scan_points, scan_n_max);
        os << "\nu_star,gap,g_star_exact,n_lower,n_upper,sector\n";
        for (const auto& pt : points)
            os << pt.u_star << ',' << pt.gap << ','
               << pt.u_star * std::sqrt(static_cast<double>(n_target)) / de << ','
               << pt.lower.fock_n << ',' << pt.upper.fock_n << ',' << pt.sector << '\n';
    }
    write_output(output, os.str());
    return successes > 0 ? 0 : 1;
}

int run_compare(const Params& params, const std::vector<long>& k_list,
                std::vector<std::string> method_names, const std::string& output, bool table)
{
    double de = params.require_delta_e();
    double n = params.require_n();
    if (method_names.empty())
        method_names = {"wkb", "series", "ostrovsky", "ahmad_bullough"};
    std::ostringstream os;
    os << stamp("compare", {{"delta_e", fmt(de)}, {"n", fmt(n)}});
    std::vector<rabi::Method> methods;
    for (const std::string& name : method_names)
        methods.push_back(rabi::parse_method(name, 0)); // k = 0: take k per row
    rabi::ResonanceReport rep = rabi::resonance_report(de, n, k_list, methods);
    rabi::write_csv(os, rep);
    write_output(output, os.str());
    if (table)
        std::cout << rabi::format_table(rep);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"dressed two-level system toolkit: spectra, dressed gaps, and "
                 "multiphoton Bloch-Siegert resonances"};
    app.require_subcommand(1);

    Params params;

    auto* dressed = app.add_subcommand("dressed", "dressed-gap curve dE(g)/dE over a g grid");
    params.add_flags(dressed, false);
    std::string method_name = "wkb";
    long method_k = 1;
    std::string grid_spec = "0:1:201";
    std::string output;
    bool emit_plot = false;
    dressed->add_option("--method", method_name,
                        "quadrature|operator|wkb|series|ahmad_bullough|ostrovsky");
    dressed->add_option("--k", method_k, "resonance index for ahmad_bullough");
    dressed->add_option("--g", grid_spec, "g grid, lo:hi:count");
    dressed->add_option("--output,-o", output, "CSV output path (default stdout)");
    dressed->add_flag("--emit-plot", emit_plot, "also write a gnuplot script next to the CSV");

    auto* fig1 = app.add_subcommand(
        "figure1", "dressed-gap overview: wkb + series at delta_e=11, n=1e8 on g in [0,1]");
    fig1->add_option("--output,-o", output, "CSV output path (default stdout)");
    fig1->add_flag("--emit-plot", emit_plot, "also write a gnuplot script next to the CSV");

    auto* spectrum = app.add_subcommand("spectrum", "labeled eigenvalues of H, H0, or H0+V+W");
    params.add_flags(spectrum);
    long n_max = 400;
    std::string which_operator = "full";
    std::string dump_matrix;
    spectrum->add_option("--n-max", n_max, "Fock truncation (<= 5000)");
    spectrum->add_option("--operator", which_operator, "full|h0|rotated");
    spectrum->add_option("--output,-o", output, "CSV output path (default stdout)");
    spectrum->add_option("--dump-matrix", dump_matrix, "write the operator matrix as plain text");

    auto* resonance = app.add_subcommand("resonance", "solve dE(g) = (2k+1) hbar*omega0 for g");
    params.add_flags(resonance, false);
    std::vector<long> k_list;
    bool scan = false;
    double u_lo = 0.0, u_hi = 0.0;
    int scan_points = 15;
    long scan_n_max = 0;
    resonance->add_option("--k", k_list, "resonance indices")->required();
    resonance->add_option("--method", method_name,
                          "quadrature|operator|wkb|series|ahmad_bullough|ostrovsky");
    resonance->add_option("--output,-o", output, "CSV output path (default stdout)");
    resonance->add_flag("--scan", scan, "also run the exact-diagonalization anticrossing scan");
    resonance->add_option("--u-lo", u_lo, "scan interval lower end");
    resonance->add_option("--u-hi", u_hi, "scan interval upper end");
    resonance->add_option("--scan-points", scan_points, "coarse scan grid size");
    resonance->add_option("--scan-n-max", scan_n_max, "Fock truncation for the scan");

    auto* compare = app.add_subcommand("compare", "g*(k) comparison table across methods");
    params.add_flags(compare, false);
    std::vector<std::string> method_names;
    bool table = false;
    compare->add_option("--k", k_list, "resonance indices")->required();
    compare->add_option("--methods", method_names, "methods to compare");
    compare->add_option("--output,-o", output, "CSV output path (default stdout)");
    compare->add_flag("--table", table, "print an aligned table to stdout");

    try {
        app.parse(argc, argv);
        params.merge_config();
        if (dressed->parsed())
            return run_dressed(params, method_name, method_k, parse_grid(grid_spec), output,
                               emit_plot);
        if (fig1->parsed())
            return run_figure1(output, emit_plot);
        if (spectrum->parsed())
            return run_spectrum(params, n_max, which_operator, output, dump_matrix);
        if (resonance->parsed())
            return run_resonance(params, k_list, method_name, output, scan, u_lo, u_hi,
                                 scan_points, scan_n_max);
        if (compare->parsed())
            return run_compare(params, k_list, method_names, output, table);
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
