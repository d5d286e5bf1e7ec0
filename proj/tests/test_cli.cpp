#include "btexp/frames.hpp"
#include "btexp/io.hpp"
#include "btexp/job.hpp"
#include "btexp/symbols.hpp"

#include "support.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace btexp;
using namespace testsupport;

namespace {

PiScalar q(long a, long b = 1) { return PiScalar::ratio(a, b); }

JobSpec builtin_job(const std::string& b, const std::string& f, std::vector<std::string> tasks)
{
    JobSpec s;
    s.builtin = b;
    s.f = f;
    s.tasks = std::move(tasks);
    return s;
}

std::string row_value(const Json& table, int j, const char* col) { return table["rows"][j][col]["str"].get<std::string>(); }

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("symbol parser")
    {
        const SymbolScope s1 = coordinate_scope(1);
        const Jet z = Jet::z(1, 0);
        const Jet zb = Jet::zbar(1, 0);
        CHECK(parse_symbol("z*zbar", s1) == z * zb);
        CHECK(parse_symbol("3/2*z^2 - zbar + 1", s1) == jet_scale(z * z, q(3, 2)) - zb + Jet::constant(1, q(1)));
        CHECK(parse_symbol("pi*i", s1) == Jet::constant(1, PiScalar(Gauss{0, 1}, 1)));
        CHECK(parse_symbol("0.25", s1) == Jet::constant(1, q(1, 4)));
        CHECK(parse_symbol("(z + zbar)^2", s1) == z * z + jet_scale(z * zb, q(2)) + zb * zb);
        CHECK(parse_symbol("z/pi", s1) == jet_scale(z, PiScalar::pi(-1)));
        CHECK(parse_symbol("conj(i*z)", s1) == jet_scale(zb, PiScalar(Gauss{0, -1})));
        const Jet inv = parse_symbol("1/(1 + z*zbar)", s1);
        CHECK(inv.trunc() == Bidegree{4, 4});
        CHECK(inv.coeff({2}, {2}) == q(1));
        CHECK(parse_symbol("exp(z)", s1).coeff({3}, {0}) == q(1, 6));
        CHECK(parse_symbol("log(1 + z)", s1).coeff({2}, {0}) == q(-1, 2));
        CHECK(parse_symbol("(1 + z)^(-1)", s1).coeff({2}, {0}) == q(1));
        CHECK_THROWS_AS(parse_symbol("z^(-1)", s1), SchemaError);
        const SymbolScope s2 = coordinate_scope(2);
        CHECK(parse_symbol("z1*zbar2", s2) == Jet::z(2, 0) * Jet::zbar(2, 1));
        CHECK_THROWS_AS(parse_symbol("z", s2), SchemaError);
        CHECK_THROWS_AS(parse_symbol("z +", s1), SchemaError);
        CHECK_THROWS_AS(parse_symbol("(z", s1), SchemaError);
        CHECK_THROWS_AS(parse_symbol("z / (1 + pi)", s1), SchemaError);
        CHECK_THROWS_AS(parse_symbol("exp(1 + z)", s1), SchemaError);
        CHECK(parse_univariate("2 - 3*t + t^2", "t") == std::vector<PiScalar>{q(2), q(-3), q(1)});
        CHECK_THROWS_AS(parse_univariate("t/(1+t)", "t"), SchemaError);
    }

    TEST_CASE("frame JSON round trip")
    {
        Rng rng(9);
        NormalFrame fr = random_frame(rng, 2);
        fr.f = random_jet(rng, 2, {3, 3});
        const Json j = to_json(fr);
        const NormalFrame back = normal_frame_from_json(parse_json(j.dump(), "t"));
        CHECK(back.lambda == fr.lambda);
        CHECK(back.phi1 == fr.phi1);
        CHECK(back.theta == fr.theta);
        CHECK(*back.f == *fr.f);
        CHECK(to_json(back) == j);
        FramedInput in;
        in.n = 1;
        in.phi = Jet::z(1, 0) * Jet::zbar(1, 0);
        in.theta = JetMatrix::identity(1, 1);
        const FramedInput in2 = framed_input_from_json(to_json(in));
        CHECK(in2.phi == in.phi);
        CHECK_THROWS_AS(framed_input_from_json(Json{{"n", 2}, {"phi", to_json(in.phi)}}), SchemaError);
    }

    TEST_CASE("builtin jobs")
    {
        Report r = run_job(builtin_job("cp1", "1", {"coeffs", "verify"}));
        CHECK(r.ok);
        const Json& c = r.body["coeffs"];
        for (int j = 0; j < 3; ++j)
            for (const char* col : {"engine", "closed_form", "closed_polarized", "oracle"})
                CHECK(row_value(c, j, col) == std::vector<std::string>{"1", "1", "0"}[static_cast<std::size_t>(j)]);

        r = run_job(builtin_job("flat(1, pi)", "z*zbar", {"coeffs"}));
        CHECK(r.ok);
        CHECK(row_value(r.body["coeffs"], 1, "engine") == "1/2 * pi^-1");
        CHECK(r.body["coeffs"]["rows"][1]["engine"]["decimal"].get<std::string>().rfind("0.159154943091895335768883763373", 0) == 0);
        CHECK_FALSE(r.body.contains("verify"));

        JobSpec s = builtin_job("fock(pi)", "z^2 + zbar^2", {"star"});
        s.g = "z^2 + zbar^2";
        r = run_job(s);
        CHECK(row_value(r.body["star"], 2, "engine") == "1/2 * pi^-2");

        s = builtin_job("cp1", "t", {"oracle"});
        r = run_job(s);
        CHECK(r.ok);
        CHECK(r.body["oracle"]["exact_coeffs"][2]["str"].get<std::string>() == "-1");
    }

    TEST_CASE("reports are deterministic")
    {
        JobSpec s = builtin_job("fock(pi, 2*pi)", "z1*zbar2 + z2*zbar2^2", {"curvature", "coeffs", "compose", "verify"});
        s.g = "zbar1 + z1*z2";
        const std::string a = emit_report(run_job(s), "json");
        const std::string b = emit_report(run_job(s), "json");
        CHECK(a == b);
        CHECK(emit_report(run_job(s), "text") == emit_report(run_job(s), "text"));
    }

    TEST_CASE("errors")
    {
        CHECK_THROWS_AS(run_job(builtin_job("cp1", "1", {})), SchemaError);
        CHECK_THROWS_AS(run_job(builtin_job("cp1", "1", {"bogus"})), SchemaError);
        CHECK_THROWS_AS(run_job(builtin_job("sphere", "1", {"coeffs"})), SchemaError);
        CHECK_THROWS_AS(run_job(builtin_job("cp1", "1", {"compose"})), SchemaError);
        JobSpec s = builtin_job("cp1", "1", {"coeffs"});
        s.trunc_override = Bidegree{2, 2};
        CHECK_THROWS_AS(run_job(s), TruncationError);
        s = builtin_job("", "1", {"coeffs"});
        s.input_text = "{\"n\": 1,";
        CHECK_THROWS_AS(run_job(s), SchemaError);
        CHECK(parse_trunc_override("3,2") == Bidegree{3, 2});
        CHECK(parse_trunc_override("4") == Bidegree{4, 4});
        CHECK_THROWS_AS(parse_trunc_override("x"), SchemaError);
        CHECK(describe_failure(TruncationError("w", {3, 3}, {2, 2})).first == kExitTruncation);
        CHECK(describe_failure(SchemaError("w")).first == kExitSchema);
    }

    TEST_CASE("input documents")
    {
        std::ifstream in(std::string(BTEXP_TEST_DATA) + "/cubic_weight.json");
        REQUIRE(in);
        std::stringstream ss;
        ss << in.rdbuf();
        JobSpec s;
        s.input_text = ss.str();
        s.f = "z*zbar + z";
        s.g = "zbar^2 + z";
        s.tasks = {"normalize", "coeffs", "compose", "star", "verify"};
        const Report r = run_job(s);
        CHECK(r.ok);
        CHECK(r.body["frame"]["valid"].get<bool>());
        // the normalized frame can be fed back in without renormalizing
        JobSpec again;
        again.input_text = r.body["normal_frame"].dump();
        again.tasks = {"coeffs", "compose", "star"};
        const Report r2 = run_job(again);
        for (const char* t : {"coeffs", "compose", "star"})
            for (int j = 0; j < 3; ++j)
                CHECK(row_value(r2.body[t], j, "engine") == row_value(r.body[t], j, "engine"));
    }
}
