#include "btexp/job.hpp"

#include "btexp/closed_forms.hpp"
#include "btexp/engine.hpp"
#include "btexp/frames.hpp"
#include "btexp/oracle.hpp"
#include "btexp/symbols.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace btexp {

const std::vector<std::string>& known_tasks()
{
    static const std::vector<std::string> t{"normalize", "curvature", "coeffs", "compose", "star", "oracle", "verify"};
    return t;
}

Bidegree parse_trunc_override(const std::string& text)
{
    auto num = [&](const std::string& s) {
        if (s.empty() || s.size() > 3 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw SchemaError("BT_TRUNC_OVERRIDE: expected \"P,Q\" or \"P\" with small nonnegative integers, got '" +
                              text + "'");
        return std::stoi(s);
    };
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        const int p = num(text);
        return {p, p};
    }
    return {num(text.substr(0, comma)), num(text.substr(comma + 1))};
}

namespace {

constexpr int kSymbolCap = 4;

enum class Model { Fock, Cp1, None };

Json value(const PiScalar& x) { return Json{{"str", x.str()}, {"decimal", x.decimal(30)}}; }

Json values(const std::vector<PiScalar>& v)
{
    Json a = Json::array();
    for (const auto& x : v) a.push_back(value(x));
    return a;
}

Json matrix(const ScalarMatrix& m)
{
    Json a = Json::array();
    for (const auto& row : m) a.push_back(values(row));
    return a;
}

Json curvature_json(const CurvatureReport& c)
{
    return Json{{"mode", c.mode == CurvatureMode::Direct ? "direct" : "point_formula"},
                {"detR", value(c.detR)},
                {"r", value(c.r0)},
                {"rhat", value(c.rhat0)},
                {"ric", matrix(c.ric0)},
                {"rdet", matrix(c.rdet0)},
                {"norm_RTX2", value(c.norm_RTX2)},
                {"norm_Ric2", value(c.norm_Ric2)},
                {"norm_Rdet2", value(c.norm_Rdet2)},
                {"pair_Ric_Rdet", value(c.pair_Ric_Rdet)},
                {"lap_r", value(c.lap_r0)},
                {"lap_rhat", value(c.lap_rhat0)}};
}

bool same_curvature(const CurvatureReport& a, const CurvatureReport& b)
{
    return a.detR == b.detR && a.r0 == b.r0 && a.rhat0 == b.rhat0 && a.ric0 == b.ric0 && a.rdet0 == b.rdet0 &&
           a.norm_RTX2 == b.norm_RTX2 && a.norm_Ric2 == b.norm_Ric2 && a.norm_Rdet2 == b.norm_Rdet2 &&
           a.pair_Ric_Rdet == b.pair_Ric_Rdet && a.lap_r0 == b.lap_r0 && a.lap_rhat0 == b.lap_rhat0;
}

Json symbol_json(const SymbolReport& s)
{
    Json j{{"f", value(s.f0)},           {"lap_f", value(s.lap_f0)},       {"lap2_f", value(s.lap2_f0)},
           {"ddf_Ric", value(s.ddf_Ric)}, {"ddf_Rdet", value(s.ddf_Rdet)}, {"df_dr", value(s.df_dr)},
           {"dbf_dbr", value(s.dbf_dbr)}, {"df_drhat", value(s.df_drhat)}, {"dbf_dbrhat", value(s.dbf_dbrhat)}};
    if (!s.has_g) return j;
    const std::vector<std::pair<const char*, const PiScalar*>> g{
        {"g", &s.g0},
        {"lap_g", &s.lap_g0},
        {"lap2_g", &s.lap2_g0},
        {"ddg_Ric", &s.ddg_Ric},
        {"ddg_Rdet", &s.ddg_Rdet},
        {"df_dgbar", &s.df_dgbar},
        {"dbf_dbgbar", &s.dbf_dbgbar},
        {"dg_dfbar", &s.dg_dfbar},
        {"dbg_dbfbar", &s.dbg_dbfbar},
        {"dbg_df_Ric", &s.dbg_df_Ric},
        {"dbg_df_Rdet", &s.dbg_df_Rdet},
        {"dbf_dg_Ric", &s.dbf_dg_Ric},
        {"dbf_dg_Rdet", &s.dbf_dg_Rdet},
        {"ddf_ddgbar", &s.ddf_ddgbar},
        {"D10_f_gbar", &s.D10_f_gbar},
        {"D01_f_gbar", &s.D01_f_gbar},
        {"dlapf_dgbar", &s.dlapf_dgbar},
        {"dblapf_dbgbar", &s.dblapf_dbgbar},
        {"dlapg_dfbar", &s.dlapg_dfbar},
        {"dblapg_dbfbar", &s.dblapg_dbfbar},
        {"dbf_dblapgbar", &s.dbf_dblapgbar},
    };
    for (const auto& [k, v] : g) j[k] = value(*v);
    return j;
}

std::vector<std::string> split_args(const std::string& s)
{
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

PiScalar constant_arg(const std::string& text)
{
    SymbolScope scope;
    const Jet v = parse_symbol(text, scope);
    for (const auto& [k, c] : v.terms())
        if (k != 0) throw SchemaError("builtin argument '" + text + "' is not a constant");
    return v.constant_term();
}

int int_arg(const std::string& text)
{
    const PiScalar v = constant_arg(text);
    if (v.is_zero()) return 0;
    const Gauss c = v.coeff(0);
    if (!v.is_monomial() || sgn(c.im) != 0 || c.re.get_den() != 1 || !c.re.get_num().fits_sint_p())
        throw SchemaError("builtin argument '" + text + "' is not an integer");
    return static_cast<int>(c.re.get_num().get_si());
}

struct Loaded {
    NormalFrame frame;
    std::string source;
    Model model = Model::None;
    SymbolScope scope;
    std::optional<Jet> f;
    std::optional<Jet> g;
};

Jet apply_override(const Jet& a, const std::optional<Bidegree>& t) { return t ? jet_truncate(a, *t) : a; }

JetMatrix apply_override(const JetMatrix& m, const std::optional<Bidegree>& t)
{
    return t ? jet_truncate(m, *t) : m;
}

Loaded load_builtin(const JobSpec& spec)
{
    std::string name = spec.builtin;
    name.erase(std::remove_if(name.begin(), name.end(), [](unsigned char c) { return std::isspace(c); }), name.end());
    std::vector<std::string> args;
    const auto open = name.find('(');
    if (open != std::string::npos) {
        if (name.back() != ')') throw SchemaError("builtin '" + spec.builtin + "': expected name(args)");
        args = split_args(name.substr(open + 1, name.size() - open - 2));
        name = name.substr(0, open);
    }
    Loaded l;
    l.source = "builtin:" + spec.builtin;
    int cap = kSymbolCap;
    if (name == "flat") {
        if (args.size() > 2) throw SchemaError("builtin flat takes (n, lambda)");
        const int n = args.empty() ? 1 : int_arg(args[0]);
        if (n < 1 || n > kMaxVars) throw SchemaError("builtin flat: n must be in 1..4");
        l.frame = flat_frame(n, args.size() == 2 ? constant_arg(args[1]) : PiScalar::pi(1));
        l.model = Model::Fock;
    } else if (name == "fock") {
        std::vector<PiScalar> lambda;
        for (const auto& a : args) lambda.push_back(constant_arg(a));
        if (lambda.empty()) lambda.push_back(PiScalar::pi(1));
        l.frame = fock_frame(lambda);
        l.model = Model::Fock;
    } else if (name == "cp1") {
        if (args.size() > 1) throw SchemaError("builtin cp1 takes an optional order");
        if (!args.empty()) cap = int_arg(args[0]);
        if (cap < 3 || cap > 8) throw SchemaError("builtin cp1: order must be in 3..8");
        l.frame = cp1_frame(cap);
        l.model = Model::Cp1;
    } else {
        throw SchemaError("unknown builtin '" + spec.builtin + "' (expected flat, fock or cp1)");
    }
    l.scope = coordinate_scope(l.frame.n, {cap, cap});
    if (l.model == Model::Cp1) l.scope.variables["t"] = cp1_t(cap);
    l.frame.phi1 = apply_override(l.frame.phi1, spec.trunc_override);
    l.frame.theta = apply_override(l.frame.theta, spec.trunc_override);
    if (spec.f) l.f = apply_override(parse_symbol(*spec.f, l.scope), spec.trunc_override);
    if (spec.g) l.g = apply_override(parse_symbol(*spec.g, l.scope), spec.trunc_override);
    return l;
}

Loaded load_input(const JobSpec& spec)
{
    const Json doc = parse_json(spec.input_text, spec.input_name);
    Loaded l;
    l.source = spec.input_name;
    if (doc.is_object() && doc.contains("lambda")) {
        l.frame = normal_frame_from_json(doc, "");
        l.scope = coordinate_scope(l.frame.n, {kSymbolCap, kSymbolCap});
        l.frame.phi1 = apply_override(l.frame.phi1, spec.trunc_override);
        l.frame.theta = apply_override(l.frame.theta, spec.trunc_override);
        if (spec.f) l.frame.f = parse_symbol(*spec.f, l.scope);
        if (spec.g) l.frame.g = parse_symbol(*spec.g, l.scope);
        if (l.frame.f) l.f = apply_override(*l.frame.f, spec.trunc_override);
        if (l.frame.g) l.g = apply_override(*l.frame.g, spec.trunc_override);
        return l;
    }
    FramedInput in = framed_input_from_json(doc, "");
    const SymbolScope scope = coordinate_scope(in.n, {kSymbolCap, kSymbolCap});
    if (spec.f) in.f = parse_symbol(*spec.f, scope);
    if (spec.g) in.g = parse_symbol(*spec.g, scope);
    in.phi = apply_override(in.phi, spec.trunc_override);
    in.theta = apply_override(in.theta, spec.trunc_override);
    if (in.f) in.f = apply_override(*in.f, spec.trunc_override);
    if (in.g) in.g = apply_override(*in.g, spec.trunc_override);
    l.frame = normalize(in);
    l.scope = coordinate_scope(in.n, {kSymbolCap, kSymbolCap});
    l.f = l.frame.f;
    l.g = l.frame.g;
    return l;
}

bool has(const std::vector<std::string>& tasks, const std::string& t)
{
    return std::find(tasks.begin(), tasks.end(), t) != tasks.end();
}

bool is_exact_polynomial(const Jet& a) { return a.trunc().hol >= kUnbounded && a.trunc().anti >= kUnbounded; }

// Rows j = 0..J; the first column is the engine, every other present column
// must equal it.
Json table(const std::vector<std::pair<std::string, std::optional<std::vector<PiScalar>>>>& cols, int J, bool& match)
{
    Json rows = Json::array();
    match = true;
    for (int j = 0; j <= J; ++j) {
        Json row;
        row["j"] = j;
        bool ok = true;
        const PiScalar& ref = (*cols.front().second)[static_cast<std::size_t>(j)];
        for (const auto& [name, c] : cols) {
            if (!c) {
                row[name] = nullptr;
                continue;
            }
            const PiScalar& x = (*c)[static_cast<std::size_t>(j)];
            row[name] = value(x);
            ok = ok && x == ref;
        }
        row["match"] = ok;
        match = match && ok;
        rows.push_back(row);
    }
    return rows;
}

Json oracle_json(const OracleSeries& o)
{
    Json num = Json::array();
    Json den = Json::array();
    if (o.exact_value) {
        for (const auto& c : o.exact_value->num) num.push_back(value(c));
        for (const auto& c : o.exact_value->den) den.push_back(rational_str(c));
    }
    Json samples = Json::array();
    for (const auto& [k, v] : o.samples) samples.push_back(Json::array({k, v}));
    Json fitted = Json::array();
    bool fit_ok = !o.fitted.coeffs.empty();
    for (const auto& c : o.fitted.coeffs) {
        const double exact = o.exact_coeffs.at(static_cast<std::size_t>(c.j)).to_complex().real();
        const double err = std::abs(c.value - exact);
        const bool ok = err <= 4 * c.error + 1e-8 * std::max(1.0, std::abs(exact));
        fit_ok = fit_ok && ok;
        fitted.push_back(Json{{"j", c.j}, {"value", c.value}, {"error", c.error}, {"ok", ok}});
    }
    return Json{{"model", o.model == OracleModel::Fock ? "fock" : "cp1"},
                {"n", o.n},
                {"symbol", o.symbol},
                {"exact_value", Json{{"num", num}, {"den", den}}},
                {"exact_coeffs", values(o.exact_coeffs)},
                {"samples", samples},
                {"fitted", fitted},
                {"condition", o.fitted.condition},
                {"match", fit_ok}};
}

} // namespace

Report run_job(const JobSpec& spec)
{
    if (spec.tasks.empty()) throw SchemaError("no tasks requested");
    for (const auto& t : spec.tasks)
        if (!has(known_tasks(), t)) throw SchemaError("unknown task '" + t + "'");
    if (spec.order < 0 || spec.order > kMaxOrder) throw SchemaError("order must be in 0..2");
    JobSpec job = spec;
    if (job.builtin.empty() && job.input_text.empty()) {
        if (job.model == "cp1") job.builtin = "cp1";
        else if (job.model == "fock") job.builtin = "fock(pi)";
        else throw SchemaError("no frame: give --input or --builtin");
    }
    if (!job.builtin.empty() && !job.input_text.empty()) throw SchemaError("--input and --builtin are exclusive");
    if (!job.model.empty() && job.model != "fock" && job.model != "cp1")
        throw SchemaError("unknown oracle model '" + job.model + "'");

    const Loaded L = job.builtin.empty() ? load_input(job) : load_builtin(job);
    if (!job.model.empty()) {
        const Model want = job.model == "fock" ? Model::Fock : Model::Cp1;
        if (L.model != want) throw SchemaError("oracle model '" + job.model + "' does not match the frame");
    }
    const NormalFrame& fr = L.frame;
    const int J = job.order;
    const auto& tasks = job.tasks;
    const bool verify = has(tasks, "verify");
    const bool want_oracle = verify || has(tasks, "oracle");
    const bool want_coeffs = has(tasks, "coeffs") || (verify && L.f);
    const bool want_compose = has(tasks, "compose") || (verify && L.f && L.g);
    const bool want_star = has(tasks, "star") || (verify && L.f && L.g);
    if ((want_coeffs || has(tasks, "oracle")) && !L.f) throw SchemaError("this task needs a symbol f (--f)");
    if ((want_compose || want_star) && !(L.f && L.g)) throw SchemaError("this task needs symbols f and g (--f, --g)");

    Report rep;
    Json& out = rep.body;
    Json checks = Json::array();
    auto check = [&](const std::string& name, bool ok) {
        checks.push_back(Json{{"name", name}, {"ok", ok}});
        if (verify) rep.ok = rep.ok && ok;
    };

    const MetricJets metric = metric_jets(fr);
    const bool polarized = is_polarized(fr, metric);
    const auto violations = validate_normal_frame(fr);
    Json lambda = Json::array();
    for (const auto& l : fr.lambda) lambda.push_back(value(l));
    out["frame"] = Json{{"source", L.source},
                        {"n", fr.n},
                        {"lambda", lambda},
                        {"approximate", fr.approximate},
                        {"polarized", polarized},
                        {"valid", violations.empty()}};
    if (L.f) out["frame"]["f"] = job.f ? *job.f : std::string("input");
    if (L.g) out["frame"]["g"] = job.g ? *job.g : std::string("input");
    check("normal frame conditions hold", violations.empty());

    if (has(tasks, "normalize")) out["normal_frame"] = to_json(fr);

    if (has(tasks, "curvature") || verify) {
        const CurvatureReport point = curvature_report(fr, metric, CurvatureMode::PointFormula);
        const CurvatureReport direct = curvature_report(fr, metric, CurvatureMode::Direct);
        const bool same = same_curvature(point, direct);
        check("curvature: direct = point formula", same);
        if (has(tasks, "curvature")) {
            Json c{{"point_formula", curvature_json(point)}, {"direct", curvature_json(direct)}, {"match", same}};
            if (L.f) c["symbols"] = symbol_json(symbol_report(fr, *L.f, L.g));
            out["curvature"] = c;
            rep.ok = rep.ok && same;
        }
    }

    std::optional<EngineContext> ctx;
    auto engine = [&]() -> const EngineContext& {
        if (!ctx) ctx = engine_context(fr, J);
        return *ctx;
    };
    auto cut = [&](const ExpansionResult& r) {
        return std::vector<PiScalar>(r.coeffs.begin(), r.coeffs.begin() + J + 1);
    };

    // Oracle series for T_f (and T_f T_g) when the model has one for these symbols.
    auto fock_ok = [&](bool with_g) {
        return L.model == Model::Fock && is_exact_polynomial(*L.f) && (!with_g || is_exact_polynomial(*L.g));
    };
    auto cp1_poly = [&]() -> std::optional<std::vector<PiScalar>> {
        if (L.model != Model::Cp1 || !job.f) return std::nullopt;
        try {
            return parse_univariate(*job.f, "t");
        } catch (const SchemaError&) {
            return std::nullopt;
        }
    };

    if (want_coeffs) {
        const std::vector<PiScalar> eng = toeplitz_coeffs(engine(), *L.f, J).coeffs;
        const ClosedFormInputs in = closed_inputs(fr, *L.f);
        std::vector<std::pair<std::string, std::optional<std::vector<PiScalar>>>> cols{
            {"engine", eng}, {"closed_form", cut(closed_toeplitz(in))}};
        if (polarized) cols.emplace_back("closed_polarized", cut(closed_polarized_toeplitz(in)));
        std::optional<std::vector<PiScalar>> orc;
        if (want_oracle) {
            if (fock_ok(false))
                orc = fock_toeplitz_series(fr.lambda, *L.f).expansion(fr.n, J);
            else if (auto p = cp1_poly())
                orc = cp1_toeplitz_series(*p).expansion(1, J);
            cols.emplace_back("oracle", orc);
        }
        bool match = false;
        out["coeffs"] = Json{{"kind", "toeplitz"}, {"rows", table(cols, J, match)}};
        out["coeffs"]["match"] = match;
        rep.ok = rep.ok && match;
        check("toeplitz: engine = closed form", cols[1].second == eng);
        if (polarized) check("toeplitz: polarized form = general form", cols[2].second == cols[1].second);
        if (orc) check("toeplitz: engine = oracle", *orc == eng);
        if (is_real(*L.f)) {
            bool real = true;
            for (const auto& x : eng) real = real && x.is_real();
            check("toeplitz: real symbol gives real coefficients", real);
        }
    }

    if (want_compose) {
        const std::vector<PiScalar> eng = compose_coeffs(engine(), *L.f, *L.g, J).coeffs;
        const ClosedFormInputs in = closed_inputs(fr, *L.f, L.g);
        std::vector<std::pair<std::string, std::optional<std::vector<PiScalar>>>> cols{
            {"engine", eng},
            {"closed_form", cut(closed_compose(in, ComposeMode::Theorem))},
            {"closed_form_remark", cut(closed_compose(in, ComposeMode::Remark))}};
        if (polarized) cols.emplace_back("closed_polarized", cut(closed_polarized_compose(in)));
        std::optional<std::vector<PiScalar>> orc;
        if (want_oracle) {
            if (fock_ok(true)) orc = fock_compose_series(fr.lambda, *L.f, *L.g).expansion(fr.n, J);
            cols.emplace_back("oracle", orc);
        }
        bool match = false;
        out["compose"] = Json{{"kind", "compose"}, {"rows", table(cols, J, match)}};
        out["compose"]["match"] = match;
        rep.ok = rep.ok && match;
        check("compose: engine = closed form", cols[1].second == eng);
        check("compose: theorem form = expanded form", cols[1].second == cols[2].second);
        if (orc) check("compose: engine = oracle", *orc == eng);
        const std::vector<PiScalar> swapped = compose_coeffs(engine(), jet_conj(*L.g), jet_conj(*L.f), J).coeffs;
        bool herm = true;
        for (int j = 0; j <= J; ++j) herm = herm && swapped[static_cast<std::size_t>(j)] == eng[static_cast<std::size_t>(j)].conj();
        check("compose: adjoint symmetry", herm);
    }

    if (want_star) {
        const std::vector<PiScalar> eng = star_coeffs(engine(), *L.f, *L.g, J).coeffs;
        const ClosedFormInputs in = closed_inputs(fr, *L.f, L.g);
        std::vector<std::pair<std::string, std::optional<std::vector<PiScalar>>>> cols{
            {"engine", eng}, {"closed_form", cut(closed_star(in))}};
        bool match = false;
        out["star"] = Json{{"kind", "star"}, {"rows", table(cols, J, match)}};
        out["star"]["match"] = match;
        rep.ok = rep.ok && match;
        check("star: engine = closed form", cols[1].second == eng);
    }

    if (has(tasks, "oracle")) {
        std::optional<OracleSeries> o;
        const std::string label = *job.f + (L.g && job.g ? " ; " + *job.g : "");
        if (L.model == Model::Fock) {
            if (!fock_ok(L.g.has_value())) throw SchemaError("fock oracle: symbols must be polynomials");
            o = fock_series(fr.lambda, *L.f, L.g, job.kmin, job.kmax, J, label);
        } else if (L.model == Model::Cp1) {
            if (L.g) throw SchemaError("cp1 oracle: composition is not available");
            const auto p = cp1_poly();
            if (!p) throw SchemaError("cp1 oracle: symbol must be a polynomial in t");
            o = cp1_series(*p, job.kmin, job.kmax, J, label);
        } else {
            throw SchemaError("oracle: needs a fock, flat or cp1 builtin frame");
        }
        out["oracle"] = oracle_json(*o);
        rep.ok = rep.ok && out["oracle"]["match"].get<bool>();
    }

    if (verify) out["verify"] = Json{{"checks", checks}, {"ok", rep.ok}};
    out["ok"] = rep.ok;
    return rep;
}

namespace {

std::string text_value(const Json& v)
{
    if (v.is_null()) return "-";
    return v["str"].get<std::string>();
}

void text_table(std::ostringstream& os, const std::string& title, const Json& t)
{
    os << title << " (" << (t["match"].get<bool>() ? "match" : "MISMATCH") << ")\n";
    for (const auto& row : t["rows"]) {
        os << "  j=" << row["j"].get<int>();
        for (auto it = row.begin(); it != row.end(); ++it) {
            if (it.key() == "j" || it.key() == "match") continue;
            os << "  " << it.key() << "=" << text_value(it.value());
        }
        os << (row["match"].get<bool>() ? "" : "  <-- mismatch") << "\n";
    }
}

} // namespace

std::string emit_report(const Report& report, const std::string& format)
{
    const Json& b = report.body;
    if (format == "json") return b.dump(2) + "\n";
    if (format != "text") throw SchemaError("unknown format '" + format + "' (json or text)");
    std::ostringstream os;
    const Json& fr = b["frame"];
    os << "frame " << fr["source"].get<std::string>() << "  n=" << fr["n"].get<int>() << "  lambda=";
    for (std::size_t i = 0; i < fr["lambda"].size(); ++i) os << (i ? ", " : "") << text_value(fr["lambda"][i]);
    os << (fr["approximate"].get<bool>() ? "  (approximate)" : "") << (fr["polarized"].get<bool>() ? "  polarized" : "")
       << "\n";
    if (b.contains("normal_frame")) os << "normal frame:\n" << b["normal_frame"].dump(2) << "\n";
    if (b.contains("curvature")) {
        const Json& c = b["curvature"]["point_formula"];
        os << "curvature (" << (b["curvature"]["match"].get<bool>() ? "both modes agree" : "MODES DISAGREE") << ")\n";
        for (const char* k : {"detR", "r", "rhat", "norm_RTX2", "norm_Ric2", "norm_Rdet2", "pair_Ric_Rdet", "lap_r",
                              "lap_rhat"})
            os << "  " << k << " = " << text_value(c[k]) << "\n";
    }
    if (b.contains("coeffs")) text_table(os, "toeplitz coefficients b_j,f(0)", b["coeffs"]);
    if (b.contains("compose")) text_table(os, "composition coefficients b_j,f,g(0)", b["compose"]);
    if (b.contains("star")) text_table(os, "star product coefficients C_j(f,g)(0)", b["star"]);
    if (b.contains("oracle")) {
        const Json& o = b["oracle"];
        os << "oracle " << o["model"].get<std::string>() << " symbol " << o["symbol"].get<std::string>() << " ("
           << (o["match"].get<bool>() ? "fit agrees" : "FIT DISAGREES") << ")\n";
        for (std::size_t j = 0; j < o["exact_coeffs"].size(); ++j) {
            os << "  j=" << j << "  exact=" << text_value(o["exact_coeffs"][j]);
            if (j < o["fitted"].size())
                os << "  fitted=" << o["fitted"][j]["value"].get<double>() << " +- " << o["fitted"][j]["error"].get<double>();
            os << "\n";
        }
    }
    if (b.contains("verify"))
        for (const auto& c : b["verify"]["checks"])
            os << (c["ok"].get<bool>() ? "  ok    " : "  FAIL  ") << c["name"].get<std::string>() << "\n";
    os << (b["ok"].get<bool>() ? "ok" : "FAILED") << "\n";
    return os.str();
}

std::pair<int, std::string> describe_failure(const std::exception& e)
{
    if (const auto* t = dynamic_cast<const TruncationError*>(&e)) {
        return {kExitTruncation, std::string("truncation: ") + t->what()};
    }
    if (dynamic_cast<const SchemaError*>(&e)) return {kExitSchema, std::string("schema: ") + e.what()};
    if (dynamic_cast<const DomainError*>(&e)) return {kExitSchema, std::string("domain: ") + e.what()};
    return {kExitInternal, std::string("error: ") + e.what()};
}

} // namespace btexp
