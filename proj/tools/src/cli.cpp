#include "subriem/cli/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "subriem/carnot/algebra_io.hpp"
#include "subriem/carnot/group.hpp"
#include "subriem/carnot/levi.hpp"
#include "subriem/ccmetric/distance.hpp"
#include "subriem/clifford/clifford.hpp"
#include "subriem/errors.hpp"
#include "subriem/spectra/counting.hpp"

namespace subriem::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string num(double v)
{
    if (v == 0.0)
        v = 0.0;  // drop the sign of -0
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

const std::string& input(const JobConfig& c, std::size_t i, const char* what)
{
    if (c.inputs.size() <= i)
        throw MalformedInput(std::string("missing input file: ") + what);
    return c.inputs[i];
}

json parse_json(const std::string& text, const std::string& where)
{
    try {
        return json::parse(text);
    }
    catch (const json::parse_error& e) {
        throw MalformedInput(where + ": JSON parse error: " + e.what());
    }
}

Eigen::VectorXd to_vector(const std::vector<double>& v, int dim, const char* name)
{
    if (static_cast<int>(v.size()) != dim)
        throw MalformedInput(std::string(name) + " needs " + std::to_string(dim) + " coordinates, got "
                             + std::to_string(v.size()));
    return Eigen::Map<const Eigen::VectorXd>(v.data(), dim);
}

json vector_json(const Eigen::VectorXd& v)
{
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        a.push_back(v[i]);
    return a;
}

spectra::NilmanifoldSpec load_spectrum_input(const std::string& path)
{
    const std::string text = carnot::read_text_file(path);
    const json doc = parse_json(text, path);
    if (doc.is_object() && doc.contains("m"))
        return parse_nilmanifold(text);
    return nilmanifold_from_algebra(carnot::parse_algebra(text));
}

spectra::Cutoffs cutoffs_of(const JobConfig& c)
{
    return {c.cutoff_tau, c.cutoff_kappa, c.cutoff_alpha, c.cutoff_gamma.value_or(c.cutoff_alpha)};
}

std::string counting_svg(const spectra::SpectrumTable& table, double t_lo, double t_hi)
{
    const spectra::CountingIndex index(table);
    const int samples = spectra::kDefaultFitSamples;
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < samples; ++i) {
        const double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (samples - 1));
        const auto n = index.count(t);
        if (n > 0)
            pts.emplace_back(std::log10(t), std::log10(static_cast<double>(n)));
    }
    if (pts.size() < 2)
        throw CutoffError("counting function is empty on the plot range");
    const double W = 640, H = 480, pad = 60;
    const double x0 = std::log10(t_lo), x1 = std::log10(t_hi);
    const double y0 = pts.front().second, y1 = std::max(pts.back().second, y0 + 1e-9);
    auto px = [&](double x) { return pad + (x - x0) / (x1 - x0) * (W - 2 * pad); };
    auto py = [&](double y) { return H - pad - (y - y0) / (y1 - y0) * (H - 2 * pad); };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<line x1=\"" << pad << "\" y1=\"" << H - pad << "\" x2=\"" << W - pad << "\" y2=\"" << H - pad
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << H - pad
       << "\" stroke=\"black\"/>\n";
    os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : pts)
        os << num(px(x)) << ',' << num(py(y)) << ' ';
    os << "\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">log10 t (|D| eigenvalue)</text>\n";
    os << "<text x=\"15\" y=\"" << H / 2 << "\" transform=\"rotate(-90 15 " << H / 2
       << ")\" text-anchor=\"middle\">log10 N(t)</text>\n";
    os << "<text x=\"" << pad << "\" y=\"" << pad - 10 << "\">t in [" << num(t_lo) << ", " << num(t_hi)
       << "], N(t) = #{0 &lt; |mu| &lt;= t}</text>\n";
    os << "</svg>\n";
    return os.str();
}

std::string cmd_validate(const JobConfig& c, int& code)
{
    const auto alg = carnot::load_algebra(input(c, 0, "algebra"), false);
    const auto report = carnot::validate_algebra(alg);
    json doc;
    doc["ok"] = report.ok();
    doc["violations"] = json::array();
    for (const auto& v : report.violations) {
        json w = json::array();
        for (const auto& g : v.witness)
            w.push_back({g.layer + 1, g.index + 1});
        doc["violations"].push_back(
            {{"invariant", carnot::to_string(v.kind)}, {"witness", w}, {"magnitude", v.magnitude}, {"message", v.message}});
    }
    code = report.ok() ? kOk : kFailure;
    return doc.dump(2) + "\n";
}

std::string cmd_compose(const JobConfig& c)
{
    const auto alg = carnot::load_algebra(input(c, 0, "algebra"));
    const auto x = carnot::make_element(alg, to_vector(c.x, alg.dim(), "--x"));
    const auto y = carnot::make_element(alg, to_vector(c.y, alg.dim(), "--y"));
    const auto z = carnot::bch_compose(alg, x, y);
    json doc;
    doc["convention"] = "exponential";
    doc["z"] = vector_json(z.coords);
    doc["koranyi_dist"] = carnot::koranyi_dist(alg, x, y);
    return doc.dump(2) + "\n";
}

std::string cmd_spectrum(const JobConfig& c)
{
    const auto spec = load_spectrum_input(input(c, 0, "spectrum spec"));
    const auto table = spectra::dirac_spectrum(spec, cutoffs_of(c));
    std::ostringstream os;
    os << "label_kind,label,dirac_value_or_abs,square_value,multiplicity\n";
    for (const auto& b : table.blocks) {
        const std::string kind = b.label.kind == spectra::BlockKind::Torus ? "torus" : "landau";
        const std::string label = spectra::format_label(b.label, table.m, table.d);
        const double a = b.abs_value();
        auto row = [&](double value, std::uint64_t mult) {
            os << kind << ',' << label << ',' << num(value) << ',' << num(b.square) << ',' << mult << '\n';
        };
        if (b.square == 0.0) {
            row(0.0, b.mult);
        }
        else if (b.has_signs) {
            if (b.mult_positive > 0)
                row(a, b.mult_positive);
            if (b.mult > b.mult_positive)
                row(-a, b.mult - b.mult_positive);
        }
        else {
            row(a, b.mult);
        }
    }
    if (!c.svg.empty()) {
        const double hi = std::min(c.t_hi, table.completeness_bound * (1.0 - 1e-9));
        if (!(hi > c.t_lo))
            throw CutoffError("plot range lies beyond the completeness bound " + num(table.completeness_bound)
                              + "; increase the " + table.limiting_cutoff + " cutoff");
        write_atomic(c.svg, counting_svg(table, c.t_lo, hi));
    }
    return os.str();
}

std::string cmd_dimfit(const JobConfig& c)
{
    const auto spec = load_spectrum_input(input(c, 0, "spectrum spec"));
    auto table = spectra::dirac_spectrum(spec, cutoffs_of(c));
    if (c.torus_only)
        table = table.torus_only();
    const auto fit = spectra::dimension_fit(table, c.t_lo, c.t_hi);
    json doc;
    doc["exponent"] = fit.exponent;
    doc["samples_used"] = fit.samples_used;
    doc["t_range"] = {c.t_lo, c.t_hi};
    doc["completeness_bound"] = table.completeness_bound;
    doc["limiting_cutoff"] = table.limiting_cutoff;
    doc["torus_only"] = c.torus_only;
    if (!c.zeta.empty()) {
        json z = json::array();
        for (const auto& s : spectra::zeta_scan(table, c.zeta)) {
            z.push_back({{"p", s.p},
                         {"total", s.total},
                         {"tail_exponent", std::isfinite(s.tail_exponent) ? json(s.tail_exponent) : json()},
                         {"diverging", s.diverging},
                         {"last_increment", s.last_increment}});
        }
        doc["zeta"] = z;
    }
    return doc.dump(2) + "\n";
}

std::string cmd_hypo(const JobConfig& c, int& code)
{
    const std::string& path = input(c, 0, "operator spec");
    hypo::Verdict v;
    if (c.dirac || c.theta) {
        const auto alg = carnot::load_algebra(path);
        const auto rep = clifford::build_rep(alg.horizontal_dim());
        v = c.theta ? hypo::theta_verdict(alg, rep, *c.theta, c.tol) : hypo::dirac_verdict(alg, rep, c.tol);
    }
    else {
        const auto spec = parse_laplacian(carnot::read_text_file(path), fs::path(path).parent_path());
        v = hypo::decide(spec, c.tol);
    }
    json doc;
    doc["status"] = hypo::to_string(v.status);
    if (v.witness) {
        doc["witness"] = {{"nu", v.witness->nu + 1},
                          {"mu", v.witness->mu.real()},
                          {"mu_imag", v.witness->mu.imag()},
                          {"element", v.witness->element}};
    }
    else {
        doc["witness"] = nullptr;
    }
    doc["notes"] = v.notes;
    code = kOk;
    if (c.expect == "hypoelliptic" && v.status == hypo::Status::NotHypoelliptic)
        code = kExpectation;
    return doc.dump(2) + "\n";
}

ccmetric::DistanceOptions distance_options(const JobConfig& c)
{
    ccmetric::DistanceOptions o;
    o.segments = c.segments;
    o.multistart = c.multistart;
    o.seed = c.seed;
    return o;
}

std::string cmd_ccdist(const JobConfig& c)
{
    const ccmetric::HorizontalFields fields(carnot::load_algebra(input(c, 0, "algebra")));
    const auto x = to_vector(c.x, fields.dim(), "--x");
    const auto y = to_vector(c.y, fields.dim(), "--y");
    const auto r = ccmetric::cc_distance(fields, x, y, distance_options(c));
    json doc;
    doc["value"] = r.value;
    doc["converged"] = r.converged;
    doc["endpoint_residual"] = r.endpoint_residual;
    doc["segments"] = r.controls.segments();
    json u = json::array();
    for (int k = 0; k < r.controls.segments(); ++k)
        u.push_back(vector_json(r.controls.u.row(k).transpose()));
    doc["controls"] = u;
    return doc.dump(2) + "\n";
}

std::string cmd_ccprops(const JobConfig& c)
{
    const auto alg = carnot::load_algebra(input(c, 0, "algebra"));
    const ccmetric::HorizontalFields fields(alg);
    const auto opts = distance_options(c);
    const int n = alg.dim();
    const int d1 = alg.horizontal_dim();
    auto pairs = ccmetric::random_pairs(n, c.samples, 1.0, c.seed);
    auto thirds = ccmetric::random_pairs(n, c.samples, 1.0, c.seed + 1);
    auto dist = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
        return ccmetric::cc_distance(fields, a, b, opts).value;
    };

    std::ostringstream os;
    os << "property,sample,lhs,rhs,passed\n";
    auto row = [&](const char* name, int i, double lhs, double rhs, bool ok) {
        os << name << ',' << i + 1 << ',' << num(lhs) << ',' << num(rhs) << ',' << (ok ? "true" : "false") << '\n';
    };
    for (int i = 0; i < c.samples; ++i) {
        const auto& [x, y] = pairs[static_cast<std::size_t>(i)];
        const auto& g = thirds[static_cast<std::size_t>(i)].first;
        const auto& w = thirds[static_cast<std::size_t>(i)].second;
        const double dxy = dist(x, y);
        const double dyx = dist(y, x);
        row("symmetry", i, dxy, dyx, std::abs(dxy - dyx) <= 1e-2 * dxy);
        const double dg = dist(carnot::bch(alg, g, x), carnot::bch(alg, g, y));
        row("left_invariance", i, dg, dxy, std::abs(dg - dxy) <= 1e-2 * dxy);
        for (double lambda : {0.5, 2.0}) {
            const double dl = dist(carnot::dilate(alg, lambda, x), carnot::dilate(alg, lambda, y));
            row(lambda < 1.0 ? "dilation_half" : "dilation_two", i, dl, lambda * dxy,
                std::abs(dl - lambda * dxy) <= 0.02 * lambda * dxy);
        }
        const double via = dist(x, w) + dist(w, y);
        row("triangle", i, dxy, via, dxy <= via * (1.0 + 1e-3));
        const double planar = carnot::bch(alg, -x, y).head(d1).norm();
        row("planar_lower_bound", i, dxy, planar, dxy >= planar * (1.0 - 1e-9));
    }
    return os.str();
}

std::string cmd_clifford(const JobConfig& c)
{
    const auto rep = clifford::build_rep(c.d);
    const auto w = clifford::weighted_sum_spectrum(rep, c.lambdas);
    std::ostringstream os;
    os << "eigenvalue_imag,multiplicity\n";
    for (const auto& g : w.spectrum)
        os << num(g.value) << ',' << g.multiplicity << '\n';
    return os.str();
}

} // namespace

spectra::NilmanifoldSpec parse_nilmanifold(const std::string& json_text)
{
    const json doc = parse_json(json_text, "nilmanifold spec");
    try {
        const int m = doc.at("m").get<int>();
        const int d = doc.at("d").get<int>();
        auto lambdas = doc.at("lambdas").get<std::vector<double>>();
        std::vector<int> delta(static_cast<std::size_t>(std::max(d, 0)), 1);
        if (doc.contains("delta"))
            delta = doc.at("delta").get<std::vector<int>>();
        return spectra::make_spec(m, std::move(lambdas), d, std::move(delta));
    }
    catch (const json::exception& e) {
        throw MalformedInput(std::string("nilmanifold spec: ") + e.what());
    }
}

spectra::NilmanifoldSpec nilmanifold_from_algebra(const carnot::GradedLieAlgebra& alg, int nu)
{
    if (alg.step() != 2)
        throw UnsupportedError("spectra are computed on step-2 nilmanifolds; reduce with a quotient first");
    const auto q = carnot::quotient_codim1(alg, nu);
    const auto levi = carnot::levi_normal_form(q.target, 0);
    if (levi.m == 0)
        throw DomainError("degenerate Levi form: no Heisenberg factor");
    const int d = alg.horizontal_dim();
    return spectra::make_spec(levi.m, {levi.lambdas.data(), levi.lambdas.data() + levi.m}, d,
                              std::vector<int>(static_cast<std::size_t>(d), 1));
}

hypo::LaplacianSpec parse_laplacian(const std::string& json_text, const fs::path& base_dir)
{
    const json doc = parse_json(json_text, "laplacian spec");
    try {
        const json& a = doc.at("algebra");
        carnot::GradedLieAlgebra alg = a.is_string()
                                           ? carnot::load_algebra(base_dir / a.get<std::string>())
                                           : carnot::parse_algebra(a.dump());
        const int p = doc.value("p", 1);
        hypo::LaplacianSpec spec{std::move(alg), p, {}};
        if (doc.contains("A")) {
            for (const auto& entry : doc.at("A")) {
                int j = entry.at("j").get<int>() - 1;
                int k = entry.at("k").get<int>() - 1;
                if (j == k)
                    throw MalformedInput("laplacian spec: A entry with j == k");
                Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(p, p);
                auto fill = [&](const char* key, cplx unit) {
                    if (!entry.contains(key))
                        return;
                    const auto rows = entry.at(key).get<std::vector<std::vector<double>>>();
                    if (static_cast<int>(rows.size()) != p)
                        throw MalformedInput(std::string("laplacian spec: A.") + key + " must be " + std::to_string(p)
                                             + "x" + std::to_string(p));
                    for (int r = 0; r < p; ++r) {
                        if (static_cast<int>(rows[static_cast<std::size_t>(r)].size()) != p)
                            throw MalformedInput(std::string("laplacian spec: A.") + key + " row length mismatch");
                        for (int s = 0; s < p; ++s)
                            m(r, s) += unit * rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)];
                    }
                };
                fill("re", cplx(1.0, 0.0));
                fill("im", cplx(0.0, 1.0));
                if (j > k) {
                    std::swap(j, k);
                    m = -m;
                }
                auto [it, inserted] = spec.A.emplace(std::make_pair(j, k), m);
                if (!inserted)
                    it->second += m;
            }
        }
        hypo::validate_spec(spec);
        return spec;
    }
    catch (const json::exception& e) {
        throw MalformedInput(std::string("laplacian spec: ") + e.what());
    }
}

void write_atomic(const fs::path& path, const std::string& text)
{
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw MalformedInput("cannot write " + tmp.string());
        f << text;
        if (!f)
            throw MalformedInput("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

int run(const JobConfig& c, std::ostream& out, std::ostream& err)
{
    try {
        int code = kOk;
        std::string text;
        if (c.command == "validate")
            text = cmd_validate(c, code);
        else if (c.command == "compose")
            text = cmd_compose(c);
        else if (c.command == "spectrum")
            text = cmd_spectrum(c);
        else if (c.command == "dimfit")
            text = cmd_dimfit(c);
        else if (c.command == "hypo")
            text = cmd_hypo(c, code);
        else if (c.command == "ccdist")
            text = cmd_ccdist(c);
        else if (c.command == "ccprops")
            text = cmd_ccprops(c);
        else if (c.command == "clifford")
            text = cmd_clifford(c);
        else {
            err << "unknown command: " << c.command << '\n';
            return kUsage;
        }
        if (c.out.empty())
            out << text;
        else
            write_atomic(c.out, text);
        if (code == kFailure && c.command == "validate")
            err << "algebra failed validation\n";
        return code;
    }
    catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    catch (const json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"subriem: Carnot groups, horizontal Dirac spectra, hypoellipticity and CC distances"};
    app.require_subcommand(1);
    app.fallthrough();

    JobConfig c;
    std::string expect;
    app.add_option("--cutoff-tau", c.cutoff_tau, "largest |tau| in spectrum tables")->check(CLI::NonNegativeNumber);
    app.add_option("--cutoff-kappa", c.cutoff_kappa, "largest oscillator level")->check(CLI::NonNegativeNumber);
    app.add_option("--cutoff-alpha", c.cutoff_alpha, "torus lattice bound")->check(CLI::NonNegativeNumber);
    app.add_option_function<double>("--cutoff-gamma", [&](double g) { c.cutoff_gamma = g; },
                                    "lattice bound for the abelian directions (default: alpha cutoff)");
    app.add_option("--tol", c.tol, "relative membership tolerance");
    app.add_option("--seed", c.seed, "seed for randomized runs");
    app.add_option("--out", c.out, "output file (written atomically)");
    app.add_option("--expect", c.expect, "exit 3 when a hypo verdict contradicts the expectation")
        ->check(CLI::IsMember({"hypoelliptic"}));

    auto* validate = app.add_subcommand("validate", "check the invariants of an algebra file");
    validate->add_option("algebra", c.inputs, "algebra JSON")->required();

    auto* compose = app.add_subcommand("compose", "BCH product of two points");
    compose->add_option("algebra", c.inputs, "algebra JSON")->required();
    compose->add_option("--x", c.x)->delimiter(',')->required();
    compose->add_option("--y", c.y)->delimiter(',')->required();

    auto* spectrum = app.add_subcommand("spectrum", "horizontal Dirac spectrum table as CSV");
    spectrum->add_option("spec", c.inputs, "nilmanifold spec or step-2 algebra JSON")->required();
    spectrum->add_option("--svg", c.svg, "write a log-log counting-function plot");
    spectrum->add_option("--t-lo", c.t_lo);
    spectrum->add_option("--t-hi", c.t_hi);

    auto* dimfit = app.add_subcommand("dimfit", "fit the eigenvalue counting exponent");
    dimfit->add_option("spec", c.inputs, "nilmanifold spec or step-2 algebra JSON")->required();
    dimfit->add_option("--t-lo", c.t_lo);
    dimfit->add_option("--t-hi", c.t_hi);
    dimfit->add_flag("--torus-only", c.torus_only);
    dimfit->add_option("--zeta", c.zeta, "exponents p for zeta partial-sum scans")->delimiter(',');

    auto* hypo_cmd = app.add_subcommand("hypo", "hypoellipticity decisions");
    hypo_cmd->require_subcommand(1);
    auto* check = hypo_cmd->add_subcommand("check", "decide a horizontal Laplacian");
    check->add_option("spec", c.inputs, "Laplacian JSON, or algebra JSON with --dirac/--theta")->required();
    check->add_flag("--dirac", c.dirac, "use the square of the horizontal Dirac operator");
    check->add_option_function<double>("--theta", [&](double t) { c.theta = t; }, "theta-family member");

    auto* ccdist = app.add_subcommand("ccdist", "Carnot-Caratheodory distance between two points");
    ccdist->add_option("algebra", c.inputs, "algebra JSON")->required();
    ccdist->add_option("--x", c.x)->delimiter(',')->required();
    ccdist->add_option("--y", c.y)->delimiter(',')->required();
    ccdist->add_option("--segments", c.segments)->check(CLI::PositiveNumber);
    ccdist->add_option("--multistart", c.multistart)->check(CLI::PositiveNumber);

    auto* ccprops = app.add_subcommand("ccprops", "distance invariant battery as CSV");
    ccprops->add_option("algebra", c.inputs, "algebra JSON")->required();
    ccprops->add_option("--samples", c.samples)->check(CLI::PositiveNumber);
    ccprops->add_option("--segments", c.segments)->check(CLI::PositiveNumber);
    ccprops->add_option("--multistart", c.multistart)->check(CLI::PositiveNumber);

    auto* cliff = app.add_subcommand("clifford", "Clifford representation utilities");
    cliff->require_subcommand(1);
    auto* cspec = cliff->add_subcommand("spectrum", "spectrum of sum lambda_j c_j c_{m+j}");
    cspec->add_option("--d", c.d)->required();
    cspec->add_option("--lambdas", c.lambdas)->delimiter(',')->required();

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    for (auto* sub : app.get_subcommands())
        c.command = sub->get_name();
    return run(c, out, err);
}

} // namespace subriem::cli
