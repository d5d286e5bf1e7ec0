#include "btexp/io.hpp"

namespace btexp {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw SchemaError((where.empty() ? std::string("/") : where) + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where)
{
    if (!j.is_object()) fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
    return *it;
}

int as_int(const Json& j, const std::string& where)
{
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<int>();
}

Rational as_rational(const Json& j, const std::string& where)
{
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) fail(where, "expected a \"p/q\" string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const SchemaError& e) {
        fail(where, e.what());
    }
}

Json trunc_json(int t) { return t >= kUnbounded ? Json(nullptr) : Json(t); }

int trunc_from(const Json& j, const std::string& where)
{
    if (j.is_null()) return kUnbounded;
    int t = as_int(j, where);
    if (t < 0) fail(where, "truncation must be nonnegative");
    return t;
}

MultiIndex index_from(const Json& j, int n, const std::string& where)
{
    if (!j.is_array() || static_cast<int>(j.size()) != n) fail(where, "expected an array of length " + std::to_string(n));
    MultiIndex m;
    for (std::size_t i = 0; i < j.size(); ++i) {
        int e = as_int(j[i], where + "/" + std::to_string(i));
        if (e < 0 || e > 127) fail(where + "/" + std::to_string(i), "exponent out of range");
        m.push_back(e);
    }
    return m;
}

} // namespace

Json to_json(const PiScalar& x)
{
    Json arr = Json::array();
    for (const auto& [m, c] : x.terms())
        arr.push_back(Json{{"pi", m}, {"re", rational_str(c.re)}, {"im", rational_str(c.im)}});
    return arr;
}

PiScalar piscalar_from_json(const Json& j, const std::string& where)
{
    if (j.is_number_integer() || j.is_string()) return PiScalar(as_rational(j, where));
    if (!j.is_array()) fail(where, "expected a PiScalar term array");
    PiScalar out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string w = where + "/" + std::to_string(i);
        const Json& t = j[i];
        int m = as_int(field(t, "pi", w), w + "/pi");
        Rational re = t.contains("re") ? as_rational(t["re"], w + "/re") : Rational(0);
        Rational im = t.contains("im") ? as_rational(t["im"], w + "/im") : Rational(0);
        out += PiScalar(Gauss{re, im}, m);
    }
    return out;
}

Json to_json(const Jet& a)
{
    Json terms = Json::array();
    for (const auto& [k, c] : a.terms())
        terms.push_back(Json{{"alpha", key_alpha_index(k, a.n())}, {"beta", key_beta_index(k, a.n())}, {"c", to_json(c)}});
    return Json{{"n", a.n()},
                {"trunc", Json::array({trunc_json(a.trunc().hol), trunc_json(a.trunc().anti)})},
                {"terms", terms}};
}

Jet jet_from_json(const Json& j, const std::string& where)
{
    int n = as_int(field(j, "n", where), where + "/n");
    if (n < 1 || n > kMaxVars) fail(where + "/n", "dimension must be in 1..4");
    Bidegree t{kUnbounded, kUnbounded};
    if (j.contains("trunc")) {
        const Json& tj = j["trunc"];
        if (!tj.is_array() || tj.size() != 2) fail(where + "/trunc", "expected [P, Q]");
        t = {trunc_from(tj[0], where + "/trunc/0"), trunc_from(tj[1], where + "/trunc/1")};
    }
    const Json& terms = field(j, "terms", where);
    if (!terms.is_array()) fail(where + "/terms", "expected an array");
    std::vector<Jet::Term> out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string w = where + "/terms/" + std::to_string(i);
        MultiIndex a = index_from(field(terms[i], "alpha", w), n, w + "/alpha");
        MultiIndex b = index_from(field(terms[i], "beta", w), n, w + "/beta");
        Key k = make_key(a, b);
        if (key_hol_degree(k) > t.hol || key_anti_degree(k) > t.anti) fail(w, "term lies outside the truncation");
        out.emplace_back(k, piscalar_from_json(field(terms[i], "c", w), w + "/c"));
    }
    return Jet::from_terms(n, t, std::move(out));
}

Json to_json(const JetMatrix& m)
{
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(row);
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

JetMatrix jetmatrix_from_json(const Json& j, const std::string& where)
{
    const Json& entries = field(j, "entries", where);
    if (!entries.is_array() || entries.empty() || !entries[0].is_array() || entries[0].empty())
        fail(where + "/entries", "expected a nonempty array of rows");
    const int rows = static_cast<int>(entries.size());
    const int cols = static_cast<int>(entries[0].size());
    if (j.contains("rows") && as_int(j["rows"], where + "/rows") != rows) fail(where + "/rows", "does not match entries");
    if (j.contains("cols") && as_int(j["cols"], where + "/cols") != cols) fail(where + "/cols", "does not match entries");
    std::vector<Jet> cells;
    for (int r = 0; r < rows; ++r) {
        const Json& row = entries[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != cols) fail(where + "/entries/" + std::to_string(r), "ragged row");
        for (int c = 0; c < cols; ++c)
            cells.push_back(jet_from_json(row[static_cast<std::size_t>(c)],
                                          where + "/entries/" + std::to_string(r) + "/" + std::to_string(c)));
    }
    const int n = cells.front().n();
    JetMatrix m(rows, cols, n);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            Jet& cell = cells[static_cast<std::size_t>(r * cols + c)];
            if (cell.n() != n) fail(where + "/entries", "entries have different dimensions");
            m(r, c) = std::move(cell);
        }
    return m;
}

Json to_json(const FramedInput& in)
{
    Json j{{"n", in.n}, {"phi", to_json(in.phi)}, {"theta", to_json(in.theta)}};
    if (in.f) j["f"] = to_json(*in.f);
    if (in.g) j["g"] = to_json(*in.g);
    return j;
}

namespace {

void check_dims(const Jet& a, int n, const std::string& where)
{
    if (a.n() != n) fail(where, "dimension does not match n");
}

void read_symbols(const Json& j, int n, std::optional<Jet>& f, std::optional<Jet>& g, const std::string& where)
{
    for (const char* key : {"f", "g"}) {
        if (!j.contains(key) || j[key].is_null()) continue;
        Jet s = jet_from_json(j[key], where + "/" + key);
        check_dims(s, n, where + "/" + key);
        (key[0] == 'f' ? f : g) = std::move(s);
    }
}

JetMatrix read_theta(const Json& j, int n, const std::string& where)
{
    JetMatrix t = jetmatrix_from_json(field(j, "theta", where), where + "/theta");
    if (t.rows() != n || t.cols() != n || t.n() != n) fail(where + "/theta", "expected an n x n matrix of jets in n variables");
    return t;
}

} // namespace

FramedInput framed_input_from_json(const Json& j, const std::string& where)
{
    FramedInput in;
    in.n = as_int(field(j, "n", where), where + "/n");
    if (in.n < 1 || in.n > kMaxVars) fail(where + "/n", "dimension must be in 1..4");
    in.phi = jet_from_json(field(j, "phi", where), where + "/phi");
    check_dims(in.phi, in.n, where + "/phi");
    in.theta = read_theta(j, in.n, where);
    read_symbols(j, in.n, in.f, in.g, where);
    return in;
}

Json to_json(const NormalFrame& fr)
{
    Json lambda = Json::array();
    for (const auto& l : fr.lambda) lambda.push_back(to_json(l));
    Json j{{"n", fr.n}, {"lambda", lambda}, {"phi1", to_json(fr.phi1)}, {"theta", to_json(fr.theta)}};
    if (fr.f) j["f"] = to_json(*fr.f);
    if (fr.g) j["g"] = to_json(*fr.g);
    Json linear = Json::array();
    for (const auto& row : fr.transform.linear) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(to_json(x));
        linear.push_back(r);
    }
    Json higher = Json::array();
    for (const auto& h : fr.transform.higher) higher.push_back(to_json(h));
    j["transform"] = Json{{"gauge", to_json(fr.transform.gauge)}, {"linear", linear}, {"higher", higher}};
    j["approximate"] = fr.approximate;
    return j;
}

NormalFrame normal_frame_from_json(const Json& j, const std::string& where)
{
    NormalFrame fr;
    fr.n = as_int(field(j, "n", where), where + "/n");
    if (fr.n < 1 || fr.n > kMaxVars) fail(where + "/n", "dimension must be in 1..4");
    const Json& lambda = field(j, "lambda", where);
    if (!lambda.is_array() || static_cast<int>(lambda.size()) != fr.n) fail(where + "/lambda", "expected n values");
    for (std::size_t i = 0; i < lambda.size(); ++i)
        fr.lambda.push_back(piscalar_from_json(lambda[i], where + "/lambda/" + std::to_string(i)));
    fr.phi1 = jet_from_json(field(j, "phi1", where), where + "/phi1");
    check_dims(fr.phi1, fr.n, where + "/phi1");
    fr.phi1.declare_valuation({2, 2});
    fr.theta = read_theta(j, fr.n, where);
    read_symbols(j, fr.n, fr.f, fr.g, where);
    fr.transform.gauge = Jet::zero(fr.n);
    fr.transform.linear.assign(static_cast<std::size_t>(fr.n), std::vector<PiScalar>(static_cast<std::size_t>(fr.n)));
    for (int i = 0; i < fr.n; ++i) {
        fr.transform.linear[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = PiScalar(1L);
        fr.transform.higher.push_back(Jet::z(fr.n, i));
    }
    if (j.contains("transform")) {
        const std::string w = where + "/transform";
        const Json& t = j["transform"];
        fr.transform.gauge = jet_from_json(field(t, "gauge", w), w + "/gauge");
        const Json& lin = field(t, "linear", w);
        if (!lin.is_array() || static_cast<int>(lin.size()) != fr.n) fail(w + "/linear", "expected n rows");
        for (int r = 0; r < fr.n; ++r) {
            const Json& row = lin[static_cast<std::size_t>(r)];
            if (!row.is_array() || static_cast<int>(row.size()) != fr.n) fail(w + "/linear", "expected n columns");
            for (int c = 0; c < fr.n; ++c)
                fr.transform.linear[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = piscalar_from_json(
                    row[static_cast<std::size_t>(c)], w + "/linear/" + std::to_string(r) + "/" + std::to_string(c));
        }
        const Json& hi = field(t, "higher", w);
        if (!hi.is_array() || static_cast<int>(hi.size()) != fr.n) fail(w + "/higher", "expected n jets");
        for (int i = 0; i < fr.n; ++i)
            fr.transform.higher[static_cast<std::size_t>(i)] =
                jet_from_json(hi[static_cast<std::size_t>(i)], w + "/higher/" + std::to_string(i));
    }
    if (j.contains("approximate")) {
        if (!j["approximate"].is_boolean()) fail(where + "/approximate", "expected a boolean");
        fr.approximate = j["approximate"].get<bool>();
    }
    return fr;
}

Json parse_json(const std::string& text, const std::string& source)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(source + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

} // namespace btexp
