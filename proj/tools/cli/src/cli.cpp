#include "jonq_cli/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <system_error>

#include <CLI11.hpp>
#include <gmpxx.h>

#include "jonq/acceleration.hpp"
#include "jonq/cocycle.hpp"
#include "jonq/degree.hpp"
#include "jonq/errors.hpp"
#include "jonq/jonquieres.hpp"
#include "jonq/linearize.hpp"

namespace jonq::cli {

namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kVersion = JONQ_VERSION_STRING;
constexpr const char* kHeaderPrefix = "# jonq ";

const std::vector<std::string> kSubcommands{"lyapunov", "accel", "orbit", "classify", "linearize", "degree"};

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string num(long v) { return std::to_string(v); }
std::string num(std::uint64_t v) { return std::to_string(v); }

ojson complex_json(Complex z) { return ojson::array({z.real(), z.imag()}); }

class Csv {
public:
    explicit Csv(const RunConfig& c) { text_ = std::string(kHeaderPrefix) + kVersion + " " + c.to_json().dump() + "\n"; }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) text_ += ',';
            text_ += cells[i];
        }
        text_ += '\n';
    }

    std::string str() && { return std::move(text_); }

private:
    std::string text_;
};

std::string json_document(const RunConfig& c, ojson result) {
    ojson doc;
    doc["version"] = kVersion;
    doc["config"] = c.to_json();
    doc["result"] = std::move(result);
    return doc.dump(2) + "\n";
}

CocycleSpec base_spec(const RunConfig& c) {
    const CocycleKind kind = parse_cocycle_kind(c.kind);
    const Complex alpha = unit_phase(c.alpha_angle);
    switch (kind) {
        case CocycleKind::JonquieresA: return CocycleSpec::jonquieres_a(alpha, 1.0, c.freq);
        case CocycleKind::JonquieresB: return CocycleSpec::jonquieres_b(alpha, 1.0, c.freq);
        case CocycleKind::BTilde: return CocycleSpec::b_tilde(alpha, 0.5, c.freq);
        case CocycleKind::Schrodinger: {
            TrigPotential v;
            if (c.coupling != 0.0) v.cos_coeffs = {2.0 * c.coupling};
            return CocycleSpec::schrodinger(c.energy, v, c.freq, 1.0);
        }
        case CocycleKind::DiagonalPower: return CocycleSpec::diagonal_power(1.0, c.freq);
        case CocycleKind::Constant: {
            if (c.matrix.size() != 4) throw InvalidSpec("--matrix takes four real entries");
            return CocycleSpec::constant_matrix({c.matrix[0], c.matrix[1], c.matrix[2], c.matrix[3]}, c.freq);
        }
    }
    throw InvalidSpec("unsupported cocycle kind");
}

std::vector<double> radii(const RunConfig& c) {
    if (!c.rho.empty()) return c.rho;
    if (c.s_steps < 1) throw InvalidSpec("--s-steps must be positive");
    if (c.s_steps > 1 && !(c.s_max > c.s_min)) throw InvalidSpec("--s-max must exceed --s-min");
    std::vector<double> out;
    for (double s : linear_grid(c.s_min, c.s_max, static_cast<std::size_t>(c.s_steps))) out.push_back(std::exp(s));
    return out;
}

EstimatorParams estimator(const RunConfig& c) {
    if (c.n < 2) throw InvalidSpec("--n must be at least 2");
    if (c.samples < 1) throw InvalidSpec("--samples must be positive");
    EstimatorParams p;
    p.n = c.n;
    p.samples = c.samples;
    p.seed = c.seed;
    p.lyapunov.threads = c.threads == 0 ? 1 : c.threads;
    return p;
}

MapParams map_params(const RunConfig& c) {
    MapParams p = MapParams::from_angles(c.alpha_angle, c.freq);
    validate(p);
    return p;
}

PointP1xC start_point(const RunConfig& c) { return {Complex(c.x_re, c.x_im), Complex(c.y_re, c.y_im)}; }

std::string run_lyapunov(const RunConfig& c) {
    const CocycleSpec tmpl = base_spec(c);
    const EstimatorParams p = estimator(c);
    const std::vector<double> rs = radii(c);
    std::vector<LyapunovEstimate> ests;
    for (double r : rs) {
        const CocycleSpec spec = tmpl.with_rho(r);
        validate(spec);
        ests.push_back(lyapunov(spec, p.n, p.samples, p.seed, p.lyapunov));
    }
    if (c.format == "json") {
        ojson rows = ojson::array();
        for (std::size_t i = 0; i < rs.size(); ++i) {
            ojson r;
            r["rho"] = rs[i];
            r["ln_rho"] = std::log(rs[i]);
            r["L"] = ests[i].value;
            r["stderr"] = ests[i].std_error;
            r["half_n_L"] = ests[i].half_n_value;
            rows.push_back(std::move(r));
        }
        return json_document(c, std::move(rows));
    }
    Csv csv(c);
    csv.row({"kind", "alpha_angle", "freq", "rho", "ln_rho", "L", "stderr", "half_n_L", "n", "samples", "seed"});
    for (std::size_t i = 0; i < rs.size(); ++i) {
        csv.row({c.kind, num(c.alpha_angle), num(c.freq), num(rs[i]), num(std::log(rs[i])), num(ests[i].value),
                 num(ests[i].std_error), num(ests[i].half_n_value), num(c.n), num(c.samples), num(c.seed)});
    }
    return std::move(csv).str();
}

std::string run_accel(const RunConfig& c) {
    const CocycleSpec tmpl = base_spec(c);
    const EstimatorParams p = estimator(c);
    const std::vector<double> rs = radii(c);
    std::vector<AccelerationEstimate> acc;
    std::vector<RegularityReport> reg;
    for (double r : rs) {
        const CocycleSpec spec = tmpl.with_rho(r);
        validate(spec);
        acc.push_back(acceleration_at(spec, r, c.h, p));
        reg.push_back(regularity_check(spec, r, c.h, p));
    }
    if (c.format == "json") {
        ojson rows = ojson::array();
        for (std::size_t i = 0; i < rs.size(); ++i) {
            ojson r;
            r["rho"] = rs[i];
            r["omega"] = acc[i].omega;
            r["nearest_integer"] = acc[i].nearest_integer;
            r["distance"] = acc[i].distance;
            r["left_slope"] = acc[i].left_slope;
            r["right_slope"] = reg[i].right_slope;
            r["regular"] = reg[i].verdict == Regularity::Regular;
            rows.push_back(std::move(r));
        }
        return json_document(c, std::move(rows));
    }
    Csv csv(c);
    csv.row({"rho", "omega", "nearest_integer", "distance", "left_slope", "right_slope", "regular_flag"});
    for (std::size_t i = 0; i < rs.size(); ++i) {
        csv.row({num(rs[i]), num(acc[i].omega), num(acc[i].nearest_integer), num(acc[i].distance),
                 num(acc[i].left_slope), num(reg[i].right_slope), reg[i].verdict == Regularity::Regular ? "1" : "0"});
    }
    return std::move(csv).str();
}

std::vector<PointP1xC> orbit_points(const RunConfig& c, const MapParams& p, std::size_t& hits) {
    const PointP1xC q = start_point(c);
    hits = 0;
    if (c.system == "f") {
        OrbitRecord rec = orbit(p, q, c.n, c.dist_tol);
        hits = rec.indeterminacy_hits.size();
        if (rec.truncated) throw IndeterminatePoint();
        return std::move(rec.points);
    }
    std::vector<PointP1xC> pts{q};
    if (c.system == "g") {
        for (std::uint64_t k = 0; k < c.n; ++k) pts.push_back(apply_g(p, pts.back()));
    } else if (c.system == "G") {
        const InvertedSquareMap G(p);
        for (std::uint64_t k = 0; k < c.n; ++k) pts.push_back(G(pts.back()));
    } else {
        throw InvalidSpec("orbit --system must be f, g or G");
    }
    return pts;
}

std::string run_orbit(const RunConfig& c) {
    const MapParams p = map_params(c);
    std::size_t hits = 0;
    const std::vector<PointP1xC> pts = orbit_points(c, p, hits);
    if (c.format == "json") {
        ojson rows = ojson::array();
        for (const auto& q : pts) {
            rows.push_back(ojson::array({q.x.is_infinite() ? ojson(nullptr) : complex_json(q.x.value()),
                                         complex_json(q.y)}));
        }
        ojson r;
        r["points"] = std::move(rows);
        r["indeterminacy_hits"] = hits;
        return json_document(c, std::move(r));
    }
    Csv csv(c);
    csv.row({"step", "x_re", "x_im", "y_re", "y_im", "abs_y"});
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const auto& q = pts[k];
        const bool inf = q.x.is_infinite();
        csv.row({num(static_cast<std::uint64_t>(k)), inf ? "inf" : num(q.x.value().real()),
                 inf ? "inf" : num(q.x.value().imag()), num(q.y.real()), num(q.y.imag()), num(std::abs(q.y))});
    }
    return std::move(csv).str();
}

std::string run_classify(const RunConfig& c) {
    const MapParams p = map_params(c);
    const PointP1xC q = start_point(c);
    if (c.n < 100) throw InvalidSpec("classify needs --n of at least 100");
    OrbitCloud cloud;
    if (c.system == "f") {
        cloud = f_orbit_cloud(p, q, c.n);
    } else if (c.system == "G") {
        cloud = g_orbit_cloud(p, q, c.n);
    } else if (c.system == "linear") {
        cloud = linear_orbit_cloud(p.alpha, p.beta, q, c.n);
    } else {
        throw InvalidSpec("classify --system must be f, G or linear");
    }
    const ClosureClassification cl = classify_orbit_closure(cloud);
    if (c.format == "json") {
        ojson r;
        r["system"] = c.system;
        r["rank"] = cl.rank;
        r["confidence"] = cl.confidence;
        r["median_slope"] = cl.median_slope;
        r["window"] = ojson::array({cl.window_begin, cl.window_end});
        r["slopes"] = cl.slopes;
        r["counts"] = cl.counts;
        return json_document(c, std::move(r));
    }
    Csv csv(c);
    csv.row({"system", "n", "rank", "confidence", "median_slope", "window_begin", "window_end"});
    csv.row({c.system, num(c.n), num(static_cast<long>(cl.rank)), num(cl.confidence), num(cl.median_slope),
             num(static_cast<std::uint64_t>(cl.window_begin)), num(static_cast<std::uint64_t>(cl.window_end))});
    return std::move(csv).str();
}

std::string run_linearize(const RunConfig& c) {
    const MapParams p = map_params(c);
    if (c.order < 1 || c.order > 64) throw InvalidSpec("--order must lie in [1, 64]");
    if (!(c.divisor_floor > 0.0)) throw InvalidSpec("--divisor-floor must be positive");
    const auto N = static_cast<std::size_t>(c.order);
    const ConjugacyCoeffs co = solve_coefficients(p, N, c.divisor_floor);
    const ResidualNorms res = residual_norms(co);
    const double conj = verify_conjugacy_numeric(co, 64, c.y_radius, c.x_radius);
    const double fiber = verify_zero_fiber(co, 64, c.x_radius);

    if (c.format == "json") {
        ojson r;
        r["coefficients"] = ojson::parse(coefficients_json(co));
        r["residuals"] = {{"eq1", res.r1}, {"eq2", res.r2}, {"eq3", res.r3}};
        r["radius_estimate"] = N >= 8 ? ojson(estimate_radius(co)) : ojson(nullptr);
        r["conjugacy_error"] = conj;
        r["zero_fiber_error"] = fiber;
        return json_document(c, std::move(r));
    }
    Csv csv(c);
    csv.row({"nu", "a_re", "a_im", "b_re", "b_im", "c_re", "c_im"});
    for (std::size_t k = 0; k <= N; ++k) {
        csv.row({num(static_cast<std::uint64_t>(k)), num(co.a[k].real()), num(co.a[k].imag()), num(co.b[k].real()),
                 num(co.b[k].imag()), num(co.c[k].real()), num(co.c[k].imag())});
    }
    return std::move(csv).str();
}

mpq_class parse_rational(const std::string& s) {
    mpq_class q;
    const std::string t = s.substr(s.find_first_not_of(' ') == std::string::npos ? 0 : s.find_first_not_of(' '));
    if (t.empty() || q.set_str(t, 10) != 0) throw InvalidSpec("not a rational number: '" + s + "'");
    if (q.get_den() == 0) throw InvalidSpec("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

std::optional<std::pair<mpq_class, mpq_class>> parse_specialization(const std::string& s) {
    if (s.empty()) return std::nullopt;
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw InvalidSpec("--specialize takes \"alpha,beta\"");
    return std::make_pair(parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1)));
}

std::string run_degree(const RunConfig& c) {
    const MapFamily fam = named_family(c.map);
    const auto forced = parse_specialization(c.specialize);
    const DegreeSequence seq = family_degree_sequence(fam, c.degree_n, c.seed, forced);
    const GrowthReport rep = growth_classify(seq.degrees);
    if (c.format == "json") {
        ojson r = ojson::parse(growth_report_json(rep));
        ojson sp = ojson::array();
        for (const auto& [a, b] : seq.specializations) sp.push_back(ojson::array({a.get_str(), b.get_str()}));
        r["specializations"] = std::move(sp);
        r["attempts"] = seq.attempts;
        return json_document(c, std::move(r));
    }
    Csv csv(c);
    std::string body = growth_report_csv(rep);
    std::string text = std::move(csv).str();
    return text + body;
}

template <class T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
    auto it = j.find(key);
    return it == j.end() ? fallback : it->get<T>();
}

}  // namespace

ojson RunConfig::to_json() const {
    ojson j;
    j["subcommand"] = subcommand;
    j["kind"] = kind;
    j["alpha_angle"] = alpha_angle;
    j["freq"] = freq;
    j["rho"] = rho;
    j["s_min"] = s_min;
    j["s_max"] = s_max;
    j["s_steps"] = s_steps;
    j["n"] = n;
    j["samples"] = samples;
    j["seed"] = seed;
    j["h"] = h;
    j["energy"] = energy;
    j["coupling"] = coupling;
    j["matrix"] = matrix;
    j["threads"] = threads;
    j["system"] = system;
    j["start"] = {x_re, x_im, y_re, y_im};
    j["dist_tol"] = dist_tol;
    j["order"] = order;
    j["divisor_floor"] = divisor_floor;
    j["y_radius"] = y_radius;
    j["x_radius"] = x_radius;
    j["map"] = map;
    j["specialize"] = specialize;
    j["degree_n"] = degree_n;
    j["format"] = format;
    return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidSpec("config must be a JSON object");
    RunConfig c;
    try {
        c.subcommand = get_or(j, "subcommand", c.subcommand);
        c.kind = get_or(j, "kind", c.kind);
        c.alpha_angle = get_or(j, "alpha_angle", c.alpha_angle);
        c.freq = get_or(j, "freq", c.freq);
        c.rho = get_or(j, "rho", c.rho);
        c.s_min = get_or(j, "s_min", c.s_min);
        c.s_max = get_or(j, "s_max", c.s_max);
        c.s_steps = get_or(j, "s_steps", c.s_steps);
        c.n = get_or(j, "n", c.n);
        c.samples = get_or(j, "samples", c.samples);
        c.seed = get_or(j, "seed", c.seed);
        c.h = get_or(j, "h", c.h);
        c.energy = get_or(j, "energy", c.energy);
        c.coupling = get_or(j, "coupling", c.coupling);
        c.matrix = get_or(j, "matrix", c.matrix);
        c.threads = get_or(j, "threads", c.threads);
        c.system = get_or(j, "system", c.system);
        const auto start = get_or(j, "start", std::vector<double>{c.x_re, c.x_im, c.y_re, c.y_im});
        if (start.size() != 4) throw InvalidSpec("config field 'start' needs four entries");
        c.x_re = start[0];
        c.x_im = start[1];
        c.y_re = start[2];
        c.y_im = start[3];
        c.dist_tol = get_or(j, "dist_tol", c.dist_tol);
        c.order = get_or(j, "order", c.order);
        c.divisor_floor = get_or(j, "divisor_floor", c.divisor_floor);
        c.y_radius = get_or(j, "y_radius", c.y_radius);
        c.x_radius = get_or(j, "x_radius", c.x_radius);
        c.map = get_or(j, "map", c.map);
        c.specialize = get_or(j, "specialize", c.specialize);
        c.degree_n = get_or(j, "degree_n", c.degree_n);
        c.format = get_or(j, "format", c.format);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidSpec(std::string("malformed config: ") + e.what());
    }
    return c;
}

std::string render(const RunConfig& c) {
    if (c.format != "csv" && c.format != "json") throw InvalidSpec("--format must be csv or json");
    if (c.subcommand == "lyapunov") return run_lyapunov(c);
    if (c.subcommand == "accel") return run_accel(c);
    if (c.subcommand == "orbit") return run_orbit(c);
    if (c.subcommand == "classify") return run_classify(c);
    if (c.subcommand == "linearize") return run_linearize(c);
    if (c.subcommand == "degree") return run_degree(c);
    throw InvalidSpec("unknown subcommand '" + c.subcommand + "'");
}

RunConfig config_from_output(const std::string& text) {
    try {
        if (text.rfind(kHeaderPrefix, 0) == 0) {
            const std::string line = text.substr(0, text.find('\n'));
            const auto brace = line.find('{');
            if (brace == std::string::npos) throw InvalidSpec("output header carries no config");
            return RunConfig::from_json(nlohmann::json::parse(line.substr(brace)));
        }
        const auto doc = nlohmann::json::parse(text);
        if (!doc.contains("config")) throw InvalidSpec("output carries no config");
        return RunConfig::from_json(doc.at("config"));
    } catch (const nlohmann::json::exception& e) {
        throw InvalidSpec(std::string("cannot read config: ") + e.what());
    }
}

namespace {

void add_common(CLI::App* sub, RunConfig& c) {
    sub->add_option("--alpha-angle", c.alpha_angle, "alpha = exp(2 pi i angle)");
    sub->add_option("--freq", c.freq, "rotation number of beta");
    sub->add_option("--seed", c.seed, "RNG seed");
    sub->add_option("--out", c.out, "output file (stdout when omitted)");
    sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void add_cocycle(CLI::App* sub, RunConfig& c) {
    sub->add_option("--kind", c.kind, "JonquieresA, JonquieresB, BTilde, Schrodinger, DiagonalPower, Constant");
    sub->add_option("--rho", c.rho, "radii, comma separated")->delimiter(',');
    sub->add_option("--s-min", c.s_min, "grid start in ln rho");
    sub->add_option("--s-max", c.s_max, "grid end in ln rho");
    sub->add_option("--s-steps", c.s_steps, "grid points");
    sub->add_option("--n", c.n, "product length");
    sub->add_option("--samples", c.samples, "phase samples");
    sub->add_option("--energy", c.energy, "Schrodinger energy");
    sub->add_option("--coupling", c.coupling, "Schrodinger potential 2 lambda cos(2 pi theta)");
    sub->add_option("--matrix", c.matrix, "Constant kind entries m00,m01,m10,m11")->delimiter(',')->expected(4);
    sub->add_option("--threads", c.threads, "worker threads per estimate");
}

void add_start(CLI::App* sub, RunConfig& c) {
    sub->add_option("--x-re", c.x_re);
    sub->add_option("--x-im", c.x_im);
    sub->add_option("--y-re", c.y_re);
    sub->add_option("--y-im", c.y_im);
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw InvalidSpec("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw InvalidSpec("write to '" + path + "' failed");
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InvalidSpec("cannot read '" + path + "'");
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Jonquieres maps and quasiperiodic cocycles", "jonq"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    RunConfig c;
    bool format_given = false;
    std::map<std::string, CLI::App*> subs;
    for (const auto& name : kSubcommands) {
        CLI::App* sub = app.add_subcommand(name);
        add_common(sub, c);
        subs[name] = sub;
    }
    subs["lyapunov"]->description("Lyapunov exponents over a radius list or ln-rho grid");
    add_cocycle(subs["lyapunov"], c);

    subs["accel"]->description("acceleration and one-sided slopes");
    add_cocycle(subs["accel"], c);
    subs["accel"]->add_option("--step", c.h, "finite-difference step in ln rho");

    subs["orbit"]->description("orbit of f, g or G");
    subs["orbit"]->add_option("--system", c.system, "f, g or G");
    subs["orbit"]->add_option("--n", c.n, "steps");
    subs["orbit"]->add_option("--dist-tol", c.dist_tol, "indeterminacy proximity threshold");
    add_start(subs["orbit"], c);

    subs["classify"]->description("orbit-closure rank by box counting");
    subs["classify"]->add_option("--system", c.system, "f, G or linear");
    subs["classify"]->add_option("--n", c.n, "orbit points");
    add_start(subs["classify"], c);

    subs["linearize"]->description("linearizing coordinates of G as truncated series");
    subs["linearize"]->add_option("--order", c.order, "truncation order N");
    subs["linearize"]->add_option("--divisor-floor", c.divisor_floor, "smallest admissible divisor");
    subs["linearize"]->add_option("--y-radius", c.y_radius, "y radius of the numeric check");
    subs["linearize"]->add_option("--x-radius", c.x_radius, "x radius of the numeric check");

    subs["degree"]->description("exact degree growth of a birational map");
    subs["degree"]->add_option("--map", c.map, "jonquieres, linear, identity, involution, henon");
    subs["degree"]->add_option("--order", c.degree_n, "number of iterates (at most 12)");
    subs["degree"]->add_option("--specialize", c.specialize, "forced \"alpha,beta\" rationals");

    std::string replay_path;
    std::string replay_out;
    CLI::App* replay = app.add_subcommand("replay", "re-run the config embedded in an output file");
    replay->add_option("file", replay_path)->required();
    replay->add_option("--out", replay_out, "output file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (replay->parsed()) {
            RunConfig rc = config_from_output(read_file(replay_path));
            write_output(replay_out, render(rc), out);
            return 0;
        }
        for (const auto& [name, sub] : subs) {
            if (sub->parsed()) {
                c.subcommand = name;
                format_given = sub->count("--format") > 0;
            }
        }
        if (!format_given && (c.subcommand == "classify" || c.subcommand == "linearize" || c.subcommand == "degree")) {
            c.format = "json";
        }
        write_output(c.out, render(c), out);
        return 0;
    } catch (const ConfigError& e) {
        err << "jonq: error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "jonq: error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "jonq: internal error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace jonq::cli
