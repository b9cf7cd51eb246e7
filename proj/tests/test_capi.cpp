#include <doctest.h>

#include <cpnsurf/capi.h>

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

using nlohmann::json;

namespace {

struct Model {
    cpn_model* ptr = nullptr;
    ~Model() { cpn_model_free(ptr); }
};

std::string take(char* s) {
    std::string out = s ? s : "";
    cpn_string_free(s);
    return out;
}

Model veronese3(int k) {
    char* spec = nullptr;
    REQUIRE(cpn_veronese_spec_json(3, k, &spec) == CPN_OK);
    Model m;
    REQUIRE(cpn_model_from_json(spec, &m.ptr) == CPN_OK);
    cpn_string_free(spec);
    return m;
}

}  // namespace

TEST_CASE("spec generation and model loading") {
    char* spec = nullptr;
    REQUIRE(cpn_veronese_spec_json(3, 0, &spec) == CPN_OK);
    const json j = json::parse(take(spec));
    CHECK(j.at("N") == 3);
    CHECK(std::abs(j.at("f")[1].at("numerator")[1][0].get<double>() - std::sqrt(2.0)) <
          1e-15);

    Model m = veronese3(1);
    CHECK(cpn_model_dimension(m.ptr) == 3);
    CHECK(cpn_model_default_depth(m.ptr) == 1);
    CHECK(cpn_model_coordinate_count(m.ptr) == 8);
    CHECK(cpn_model_has_meron(m.ptr) == 0);

    cpn_model* bad = nullptr;
    CHECK(cpn_model_from_json("{", &bad) == CPN_ERR_PARSE);
    CHECK(std::string(cpn_last_error()).find("JSON") != std::string::npos);
}

TEST_CASE("analysis and charge through the C surface") {
    Model m = veronese3(0);
    const double xs[2] = {1.0, 0.0};
    const double ys[2] = {0.0, 0.0};
    char* report = nullptr;
    REQUIRE(cpn_analyze_json(m.ptr, 0, xs, ys, 2, &report) == CPN_OK);
    const json j = json::parse(take(report));
    CHECK(j.at("points").size() == 2);
    CHECK(std::abs(j.at("points")[0].at("g12")[0].get<double>() - 0.25) < 1e-12);

    char* charge = nullptr;
    REQUIRE(cpn_charge_json(m.ptr, 0, 12, &charge) == CPN_OK);
    const json cj = json::parse(take(charge));
    CHECK(std::abs(cj.at("Q").get<double>() - 1.0) < 1e-6);
}

TEST_CASE("immersion samples in table order") {
    Model m = veronese3(0);
    double coords[8] = {0};
    REQUIRE(cpn_immersion_sample(m.ptr, 0, 1.0, 0.0, 1.0, 0.0, 16, 8, coords) == CPN_OK);
    CHECK(std::abs(coords[0] - std::sqrt(2.0) / 4.0) < 1e-10);
    CHECK(std::abs(coords[2] - 0.125) < 1e-10);
    CHECK(std::abs(coords[7] + 0.25) < 1e-10);

    // depth-1 samples are anchored: the anchor maps to zero
    REQUIRE(cpn_immersion_sample(m.ptr, 1, 1.0, 0.0, 1.0, 0.0, 16, 8, coords) == CPN_OK);
    for (double c : coords) CHECK(std::abs(c) < 1e-12);
}

TEST_CASE("meron block: reports, radius, trajectories") {
    const char* spec = R"({
        "N": 3,
        "f": [{"numerator": [[1,0]]}, {"numerator": [[0,0],[1.4142135623730951,0]]},
              {"numerator": [[0,0],[0,0],[1,0]]}],
        "k": 0,
        "meron": {"F": {"numerator": [[0,0],[1,0]]}, "c": [1,0], "branch": 1}
    })";
    Model m;
    REQUIRE(cpn_model_from_json(spec, &m.ptr) == CPN_OK);
    CHECK(cpn_model_has_meron(m.ptr) == 1);

    char* report = nullptr;
    REQUIRE(cpn_meron_report_json(m.ptr, &report) == CPN_OK);
    const json j = json::parse(take(report));
    CHECK(j.at("finite_poles").size() == 1);

    double radius[8] = {0};
    REQUIRE(cpn_meron_radius(m.ptr, 1.0, 0.0, radius) == CPN_OK);
    CHECK(std::abs(radius[4] + 1.0 / (3.0 * std::sqrt(3.0))) < 1e-13);

    std::vector<double> xs(20002), ys(20002);
    int count = 0, closed = 0;
    double period_error = 1.0;
    REQUIRE(cpn_meron_trajectory(m.ptr, 1.0, 0.0, 1e-3, 20000, xs.data(), ys.data(),
                                 20002, &count, &closed, &period_error) == CPN_OK);
    CHECK(closed == 1);
    CHECK(period_error < 1e-6);
    CHECK(count > 6000);

    // seed at the critical point is refused with a named error
    CHECK(cpn_meron_trajectory(m.ptr, 0.0, 0.0, 1e-3, 100, xs.data(), ys.data(), 102,
                               &count, &closed, &period_error) ==
          CPN_ERR_SEED_AT_CRITICAL_POINT);
}

TEST_CASE("status classes for exit-code mapping") {
    CHECK(cpn_status_is_numerical(CPN_ERR_NON_CONVERGENT) == 1);
    CHECK(cpn_status_is_numerical(CPN_ERR_QUADRATURE_DIVERGENCE) == 1);
    CHECK(cpn_status_is_numerical(CPN_ERR_PARSE) == 0);
    CHECK(std::string(cpn_version()) == "1.0.0");
}
