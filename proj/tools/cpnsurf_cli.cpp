// Command-line front end; links exclusively against the shared C API.

#include <cpnsurf/capi.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

constexpr int kExitVerifyFailure = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitNumerical = 3;

struct ModelHandle {
    cpn_model* ptr = nullptr;
    ~ModelHandle() { cpn_model_free(ptr); }
};

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { cpn_string_free(ptr); }
};

int exit_code_for(cpn_status status) {
    if (status == CPN_OK) return 0;
    return cpn_status_is_numerical(status) ? kExitNumerical : kExitBadInput;
}

int report_failure(const std::string& context, cpn_status status) {
    std::cerr << "error: " << context << ": " << cpn_last_error() << "\n";
    return exit_code_for(status);
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << content;
    return bool(out);
}

int load_model(const std::string& path, ModelHandle& model) {
    const auto text = read_file(path);
    if (!text) {
        std::cerr << "error: cannot read model file '" << path << "'\n";
        return kExitBadInput;
    }
    const cpn_status status = cpn_model_from_json(text->c_str(), &model.ptr);
    if (status != CPN_OK) return report_failure("model '" + path + "'", status);
    return 0;
}

bool parse_point_list(const std::string& text, std::vector<double>& xs,
                      std::vector<double>& ys) {
    std::stringstream ss(text);
    std::string pair;
    while (std::getline(ss, pair, ';')) {
        if (pair.empty()) continue;
        const auto comma = pair.find(',');
        if (comma == std::string::npos) return false;
        try {
            xs.push_back(std::stod(pair.substr(0, comma)));
            ys.push_back(std::stod(pair.substr(comma + 1)));
        } catch (const std::exception&) {
            return false;
        }
    }
    return !xs.empty();
}

struct GridSpec {
    int nx = 20, ny = 20;
    double xmin = -2.0, xmax = 2.0, ymin = -2.0, ymax = 2.0;

    double x_at(int i) const {
        return nx == 1 ? xmin : xmin + (xmax - xmin) * i / (nx - 1.0);
    }
    double y_at(int j) const {
        return ny == 1 ? ymin : ymin + (ymax - ymin) * j / (ny - 1.0);
    }
};

int run_veronese(int n, int k, const std::string& out_path) {
    OwnedString spec;
    const cpn_status status = cpn_veronese_spec_json(n, k, &spec.ptr);
    if (status != CPN_OK) return report_failure("veronese", status);
    if (out_path.empty()) {
        std::cout << spec.ptr;
        return 0;
    }
    if (!write_file(out_path, spec.ptr)) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return kExitBadInput;
    }
    return 0;
}

int run_analyze(const std::string& model_path, int k, const std::string& points,
                const std::optional<GridSpec>& grid, const std::string& out_path) {
    ModelHandle model;
    if (int rc = load_model(model_path, model)) return rc;
    if (k < 0) k = cpn_model_default_depth(model.ptr);
    std::vector<double> xs, ys;
    if (!points.empty()) {
        if (!parse_point_list(points, xs, ys)) {
            std::cerr << "error: --points must look like \"x1,y1;x2,y2\"\n";
            return kExitBadInput;
        }
    } else if (grid) {
        for (int j = 0; j < grid->ny; ++j)
            for (int i = 0; i < grid->nx; ++i) {
                xs.push_back(grid->x_at(i));
                ys.push_back(grid->y_at(j));
            }
    } else {
        std::cerr << "error: analyze needs --points or --grid\n";
        return kExitBadInput;
    }
    OwnedString report;
    const cpn_status status = cpn_analyze_json(model.ptr, k, xs.data(), ys.data(),
                                               static_cast<int>(xs.size()), &report.ptr);
    if (status != CPN_OK) return report_failure("analyze", status);
    if (out_path.empty()) {
        std::cout << report.ptr;
        return 0;
    }
    if (!write_file(out_path, report.ptr)) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return kExitBadInput;
    }
    return 0;
}

int run_charge(const std::string& model_path, int k, int quad_order) {
    ModelHandle model;
    if (int rc = load_model(model_path, model)) return rc;
    if (k < 0) k = cpn_model_default_depth(model.ptr);
    OwnedString report;
    const cpn_status status = cpn_charge_json(model.ptr, k, quad_order, &report.ptr);
    if (status != CPN_OK) return report_failure("charge", status);
    std::cout << report.ptr;
    return 0;
}

int run_immerse(const std::string& model_path, int k, const GridSpec& grid,
                const std::string& out_path, const std::string& obj_path,
                std::vector<int> project, double anchor_x, double anchor_y,
                int segments, int nodes) {
    ModelHandle model;
    if (int rc = load_model(model_path, model)) return rc;
    if (k < 0) k = cpn_model_default_depth(model.ptr);
    const int ncoords = cpn_model_coordinate_count(model.ptr);

    std::vector<std::vector<double>> rows(static_cast<size_t>(grid.nx) * grid.ny);
    std::vector<bool> valid(rows.size(), false);
    int skipped = 0;
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const size_t idx = static_cast<size_t>(j) * grid.nx + i;
            std::vector<double> coords(ncoords);
            const cpn_status status =
                cpn_immersion_sample(model.ptr, k, grid.x_at(i), grid.y_at(j), anchor_x,
                                     anchor_y, segments, nodes, coords.data());
            if (status == CPN_OK) {
                rows[idx] = std::move(coords);
                valid[idx] = true;
            } else if (cpn_status_is_numerical(status)) {
                return report_failure("immerse", status);
            } else {
                ++skipped;
            }
        }

    std::ostringstream csv;
    csv << "x,y";
    for (int c = 1; c <= ncoords; ++c) csv << ",X" << c;
    csv << "\n";
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const size_t idx = static_cast<size_t>(j) * grid.nx + i;
            if (!valid[idx]) continue;
            csv << fmt17(grid.x_at(i)) << "," << fmt17(grid.y_at(j));
            for (double v : rows[idx]) csv << "," << fmt17(v);
            csv << "\n";
        }
    csv << "# skipped " << skipped << " singular points\n";
    if (!write_file(out_path, csv.str())) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return kExitBadInput;
    }

    if (!obj_path.empty()) {
        for (int p : project)
            if (p < 1 || p > ncoords) {
                std::cerr << "error: --project indices must be in 1.." << ncoords << "\n";
                return kExitBadInput;
            }
        std::ostringstream obj;
        std::vector<int> vertex_id(rows.size(), 0);
        int next_id = 1;
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) {
                const size_t idx = static_cast<size_t>(j) * grid.nx + i;
                if (!valid[idx]) continue;
                vertex_id[idx] = next_id++;
                obj << "v " << fmt17(rows[idx][project[0] - 1]) << " "
                    << fmt17(rows[idx][project[1] - 1]) << " "
                    << fmt17(rows[idx][project[2] - 1]) << "\n";
            }
        for (int j = 0; j + 1 < grid.ny; ++j)
            for (int i = 0; i + 1 < grid.nx; ++i) {
                const size_t a = static_cast<size_t>(j) * grid.nx + i;
                const size_t b = a + 1;
                const size_t c = a + grid.nx + 1;
                const size_t d = a + grid.nx;
                if (valid[a] && valid[b] && valid[c] && valid[d])
                    obj << "f " << vertex_id[a] << " " << vertex_id[b] << " "
                        << vertex_id[c] << " " << vertex_id[d] << "\n";
            }
        if (!write_file(obj_path, obj.str())) {
            std::cerr << "error: cannot write '" << obj_path << "'\n";
            return kExitBadInput;
        }
    }
    return 0;
}

int run_meron(const std::string& model_path, const std::string& report_path,
              const std::string& seeds_path, const std::string& out_path, double step,
              int max_steps) {
    ModelHandle model;
    if (int rc = load_model(model_path, model)) return rc;
    if (!cpn_model_has_meron(model.ptr)) {
        std::cerr << "error: model file has no meron block\n";
        return kExitBadInput;
    }
    if (!report_path.empty()) {
        OwnedString report;
        const cpn_status status = cpn_meron_report_json(model.ptr, &report.ptr);
        if (status != CPN_OK) return report_failure("meron report", status);
        if (!write_file(report_path, report.ptr)) {
            std::cerr << "error: cannot write '" << report_path << "'\n";
            return kExitBadInput;
        }
    }
    if (!seeds_path.empty()) {
        const auto text = read_file(seeds_path);
        if (!text) {
            std::cerr << "error: cannot read seeds file '" << seeds_path << "'\n";
            return kExitBadInput;
        }
        json seeds_json;
        try {
            seeds_json = json::parse(*text);
        } catch (const json::exception& e) {
            std::cerr << "error: seeds file is not valid JSON: " << e.what() << "\n";
            return kExitBadInput;
        }
        if (!seeds_json.contains("seeds") || !seeds_json["seeds"].is_array()) {
            std::cerr << "error: seeds file needs a \"seeds\" array of [x, y] pairs\n";
            return kExitBadInput;
        }
        if (seeds_json.contains("step")) step = seeds_json["step"].get<double>();
        if (seeds_json.contains("max_steps")) max_steps = seeds_json["max_steps"].get<int>();
        std::ostringstream csv;
        csv << "trajectory,step,x,y\n";
        int traj_index = 0;
        for (const auto& seed : seeds_json["seeds"]) {
            if (!seed.is_array() || seed.size() != 2) {
                std::cerr << "error: seed " << traj_index << " is not an [x, y] pair\n";
                return kExitBadInput;
            }
            std::vector<double> xs(max_steps + 2), ys(max_steps + 2);
            int count = 0, closed = 0;
            double period_error = 0.0;
            const cpn_status status = cpn_meron_trajectory(
                model.ptr, seed[0].get<double>(), seed[1].get<double>(), step, max_steps,
                xs.data(), ys.data(), max_steps + 2, &count, &closed, &period_error);
            if (status != CPN_OK)
                return report_failure("trajectory " + std::to_string(traj_index), status);
            for (int i = 0; i < count; ++i)
                csv << traj_index << "," << i << "," << fmt17(xs[i]) << ","
                    << fmt17(ys[i]) << "\n";
            csv << "# trajectory " << traj_index << ": closed=" << closed
                << " period_error=" << fmt17(period_error) << "\n";
            ++traj_index;
        }
        if (out_path.empty()) {
            std::cout << csv.str();
        } else if (!write_file(out_path, csv.str())) {
            std::cerr << "error: cannot write '" << out_path << "'\n";
            return kExitBadInput;
        }
    }
    return 0;
}

int run_verify() {
    OwnedString report;
    int failures = 0;
    const cpn_status status = cpn_verify_json(&report.ptr, &failures);
    if (status != CPN_OK) return report_failure("verify", status);
    const json results = json::parse(report.ptr);
    for (const auto& r : results) {
        std::printf("[%s] %-36s worst %.3e tol %.3e  %s\n",
                    r["pass"].get<bool>() ? "PASS" : "FAIL",
                    r["name"].get<std::string>().c_str(), r["worst"].get<double>(),
                    r["tolerance"].get<double>(), r["detail"].get<std::string>().c_str());
    }
    std::printf("%d/%d criteria passed\n", static_cast<int>(results.size()) - failures,
                static_cast<int>(results.size()));
    return failures == 0 ? 0 : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CP^(N-1) sigma-model surfaces: solutions, immersions, invariants"};
    app.require_subcommand(1);

    // veronese
    auto* veronese = app.add_subcommand("veronese", "write the binomial model spec");
    int v_n = 3, v_k = 0;
    std::string v_out;
    veronese->add_option("--n", v_n, "dimension N")->required();
    veronese->add_option("--k", v_k, "tower depth stored in the spec");
    veronese->add_option("--out", v_out, "output spec path (stdout if omitted)");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "per-point geometry report");
    std::string a_model, a_points, a_out;
    int a_k = -1;
    GridSpec a_grid;
    bool a_has_grid = false;
    analyze->add_option("--model", a_model, "model spec JSON")->required();
    analyze->add_option("--k", a_k, "tower depth (default: spec value)");
    analyze->add_option("--points", a_points, "semicolon list: \"x1,y1;x2,y2\"");
    auto* a_grid_opt = analyze->add_option("--grid", [&](const CLI::results_t& res) {
        a_has_grid = true;
        return CLI::detail::lexical_cast(res[0], a_grid.nx) &&
               CLI::detail::lexical_cast(res[1], a_grid.ny);
    }, "grid size NX NY");
    a_grid_opt->expected(2);
    analyze->add_option("--range", [&](const CLI::results_t& res) {
        return CLI::detail::lexical_cast(res[0], a_grid.xmin) &&
               CLI::detail::lexical_cast(res[1], a_grid.xmax) &&
               CLI::detail::lexical_cast(res[2], a_grid.ymin) &&
               CLI::detail::lexical_cast(res[3], a_grid.ymax);
    }, "domain XMIN XMAX YMIN YMAX")->expected(4);
    analyze->add_option("--out", a_out, "output report path (stdout if omitted)");

    // immerse
    auto* immerse = app.add_subcommand("immerse", "sample the immersion on a grid");
    std::string i_model, i_out, i_obj;
    int i_k = -1, i_segments = 32, i_nodes = 8;
    GridSpec i_grid;
    std::vector<int> i_project{1, 2, 3};
    double i_anchor_x = 1.0, i_anchor_y = 0.0;
    immerse->add_option("--model", i_model, "model spec JSON")->required();
    immerse->add_option("--k", i_k, "tower depth (default: spec value)");
    immerse->add_option("--grid", [&](const CLI::results_t& res) {
        return CLI::detail::lexical_cast(res[0], i_grid.nx) &&
               CLI::detail::lexical_cast(res[1], i_grid.ny);
    }, "grid size NX NY")->expected(2);
    immerse->add_option("--range", [&](const CLI::results_t& res) {
        return CLI::detail::lexical_cast(res[0], i_grid.xmin) &&
               CLI::detail::lexical_cast(res[1], i_grid.xmax) &&
               CLI::detail::lexical_cast(res[2], i_grid.ymin) &&
               CLI::detail::lexical_cast(res[3], i_grid.ymax);
    }, "domain XMIN XMAX YMIN YMAX")->expected(4);
    immerse->add_option("--out", i_out, "CSV output path")->required();
    immerse->add_option("--obj", i_obj, "OBJ mesh output path");
    immerse->add_option("--project", i_project, "three 1-based coordinates for the OBJ")
        ->expected(3);
    immerse->add_option("--anchor", [&](const CLI::results_t& res) {
        return CLI::detail::lexical_cast(res[0], i_anchor_x) &&
               CLI::detail::lexical_cast(res[1], i_anchor_y);
    }, "anchor point for depth >= 1 (default 1 0)")->expected(2);
    immerse->add_option("--segments", i_segments, "path segments per leg");
    immerse->add_option("--nodes", i_nodes, "quadrature nodes per segment");

    // charge
    auto* charge = app.add_subcommand("charge", "degree and action of the solution");
    std::string c_model;
    int c_k = -1, c_quad = 16;
    charge->add_option("--model", c_model, "model spec JSON")->required();
    charge->add_option("--k", c_k, "tower depth (default: spec value)");
    charge->add_option("--quad-order", c_quad, "Gauss-Legendre order per axis");

    // meron
    auto* meron = app.add_subcommand("meron", "pole structure and trajectories");
    std::string m_model, m_report, m_seeds, m_out;
    double m_step = 1e-3;
    int m_max_steps = 200000;
    meron->add_option("--model", m_model, "model spec JSON with a meron block")->required();
    meron->add_option("--report", m_report, "quadratic-differential report path");
    meron->add_option("--trajectories", m_seeds, "seeds JSON path");
    meron->add_option("--out", m_out, "trajectory CSV path (stdout if omitted)");
    meron->add_option("--step", m_step, "arc-length step");
    meron->add_option("--max-steps", m_max_steps, "step limit per trajectory");

    // verify
    app.add_subcommand("verify", "run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitBadInput;
    }

    if (veronese->parsed()) return run_veronese(v_n, v_k, v_out);
    if (analyze->parsed())
        return run_analyze(a_model, a_k, a_points,
                           a_has_grid ? std::optional<GridSpec>(a_grid) : std::nullopt,
                           a_out);
    if (immerse->parsed())
        return run_immerse(i_model, i_k, i_grid, i_out, i_obj, i_project, i_anchor_x,
                           i_anchor_y, i_segments, i_nodes);
    if (charge->parsed()) return run_charge(c_model, c_k, c_quad);
    if (meron->parsed())
        return run_meron(m_model, m_report, m_seeds, m_out, m_step, m_max_steps);
    return run_verify();
}
