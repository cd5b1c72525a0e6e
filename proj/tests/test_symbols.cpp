#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>

#include "floq/averaging.hpp"
#include "floq/classical.hpp"
#include "floq/cutoff.hpp"
#include "floq/symbol.hpp"

using namespace floq;

TEST_CASE("grade arithmetic") {
    const SymbolGrade a{1, 0}, b{0, 1.5};
    auto pb = grade_compose(a, b, GradeOp::Poisson, 2.0);
    CHECK(pb.m1 == doctest::Approx(-1.0));
    CHECK(pb.m2 == doctest::Approx(0.5));

    auto j0 = grade_compose(SymbolGrade{0.3, -1.0}, SymbolGrade{2.0, 0.25}, GradeOp::ProductTermJ,
                            2.0, 0);
    CHECK(j0.m1 == doctest::Approx(2.3));
    CHECK(j0.m2 == doctest::Approx(-0.75));

    auto tb = grade_compose(a, a, GradeOp::TripleBracket, 2.0);
    CHECK(tb.m1 == doctest::Approx(-4.0));
    CHECK(tb.m2 == doctest::Approx(-3.0));

    CHECK(SymbolGrade{1, -2}.total() == doctest::Approx(1.0));
    CHECK(SymbolGrade{1, 0.5}.coarsened().m1 == doctest::Approx(1.5));
}

TEST_CASE("beta_tilde branches") {
    CHECK(beta_tilde(1.0, 0.5, 2.0, true) == doctest::Approx(-0.5));
    CHECK(beta_tilde(0.0, 1.5, 2.0, false) == doctest::Approx(1.5));
    CHECK(beta_tilde(0.0, 0.5, 1.0, true) == doctest::Approx(0.5));  // l=1 forces second branch
}

TEST_CASE("class norm: symbols stay bounded, non-symbols blow up with extent") {
    const double l = 2.0;
    const auto model = PotentialModel::pure_power(l);
    std::vector<double> lam_norm, bracket_norm, cos_norm;
    for (double extent : {20.0, 40.0, 80.0}) {
        const auto grid = make_phase_grid(model, extent);
        const double m = 1.2;
        auto g1 = sample_symbol([&](double x, double xi) { return std::pow(lambda_weight(x, xi, l), m); },
                                grid.x_nodes, grid.xi_nodes, {m, 0}, l);
        lam_norm.push_back(class_norm_estimate(g1, {m, 0}, 2));

        auto g2 = sample_symbol([](double x, double) { return std::pow(x_weight(x), 1.5); },
                                grid.x_nodes, grid.xi_nodes, {0, 1.5}, l);
        bracket_norm.push_back(class_norm_estimate(g2, {0, 1.5}, 2));

        auto g3 = sample_symbol([](double x, double) { return std::cos(x); }, grid.x_nodes,
                                grid.xi_nodes, {0, -0.5}, l);
        cos_norm.push_back(class_norm_estimate(g3, {0, -0.5}, 1));
    }
    CHECK(lam_norm[2] < 1.3 * lam_norm[0]);
    CHECK(bracket_norm[2] < 1.3 * bracket_norm[0]);
    // cos(x) is not in S^{0,-0.5}: the estimate must grow with the extent
    CHECK(cos_norm[1] > 1.5 * cos_norm[0]);
    CHECK(cos_norm[2] > 1.5 * cos_norm[1]);
}

TEST_CASE("class norm rejects grids too coarse for the requested order") {
    VectorXd tiny = make_axis(2.0, 4.0, 3, 0);
    GridSymbol g = sample_symbol([](double, double) { return 1.0; }, tiny, tiny, {0, 0}, 1.0);
    CHECK_THROWS_AS(class_norm_estimate(g, {0, 0}, 4), ResolutionError);
}

TEST_CASE("order_fit recovers exponents") {
    const double l = 2.0;
    const auto model = PotentialModel::pure_power(l);
    const auto grid = make_phase_grid(model, 32.0);

    auto g_lam3 = sample_symbol(
        [&](double x, double xi) { return std::pow(lambda_weight(x, xi, l), 3.0); }, grid.x_nodes,
        grid.xi_nodes, {3, 0}, l);
    CHECK(std::abs(order_fit(g_lam3) - 3.0) < 0.02);

    auto g_br = sample_symbol([](double x, double) { return std::pow(x_weight(x), 1.5); },
                              grid.x_nodes, grid.xi_nodes, {0, 1.5}, l);
    CHECK(std::abs(order_fit(g_br) - 1.5) < 0.05);

    // the period times the cutoff is a symbol of order 1-l
    auto g_T = sample_symbol(
        [&](double x, double xi) {
            const double E = xi * xi + model(x);
            const double eta = eta_cutoff(E);
            return eta > 0 ? period(model, E) * eta : 0.0;
        },
        grid.x_nodes, grid.xi_nodes, {1 - l, 0}, l);
    CHECK(order_fit(g_T) < 1.0 - l + 0.05);
    CHECK(order_fit(g_T) > 1.0 - l - 0.3);
}

TEST_CASE("order_fit requires enough dyadic shells") {
    VectorXd small = make_axis(3.0, 4.0, 8, 0);
    GridSymbol g = sample_symbol([](double, double) { return 1.0; }, small, small, {0, 0}, 1.0);
    CHECK_THROWS_AS(order_fit(g), InsufficientRangeError);
}

TEST_CASE("coarsening consistency: the fit is grade-independent, the coarse norm stays finite") {
    const double l = 2.0;
    const auto model = PotentialModel::pure_power(l);
    const auto grid = make_phase_grid(model, 40.0);
    auto g = sample_symbol([](double x, double) { return std::pow(x_weight(x), 1.25); },
                           grid.x_nodes, grid.xi_nodes, {0, 1.25}, l);
    auto g_coarse = g;
    g_coarse.grade = g.grade.coarsened();
    CHECK(order_fit(g) == doctest::Approx(order_fit(g_coarse)));
    CHECK(std::isfinite(class_norm_estimate(g, g.grade, 2)));
    CHECK(std::isfinite(class_norm_estimate(g_coarse, g_coarse.grade, 2)));
}

TEST_CASE("appendix oracle: M-slopes of the weighted integrals stay below [m]-k") {
    const double l = 2.0;
    for (double m : {1.5, -0.5}) {
        for (int k = 0; k <= 2; ++k) {
            std::vector<double> lx, ly;
            for (double M = 4.0; M <= 4096.0; M *= 2.0) {
                // d^k/dM^k int W(y, M y) w(y) dy = int d_x^k W(y, M y) y^k w(y) dy
                auto f = [&](double th) {
                    const double y = std::cos(th);
                    return bracket_power_derivative(m, M * y, k) * std::pow(y, k) *
                           chebyshev_weight_ratio(y, l);
                };
                const double val = std::abs(gl96().integrate(f, 0.0, M_PI / 2) +
                                            gl96().integrate(f, M_PI / 2, M_PI));
                if (val > 1e-14) {
                    lx.push_back(std::log(M));
                    ly.push_back(std::log(val));
                }
            }
            REQUIRE(lx.size() >= 6);
            // fit over the asymptotic tail
            std::vector<double> tx(lx.end() - 5, lx.end()), ty(ly.end() - 5, ly.end());
            CHECK(ls_slope(tx, ty) <= pos_part(m) - k + 0.1);
        }
    }
}

TEST_CASE("grid symbol serialization round trip") {
    const auto model = PotentialModel::pure_power(2);
    const auto grid = make_phase_grid(model, 8.0, 6, 6);
    auto g = sample_symbol([](double x, double xi) { return x * xi; }, grid.x_nodes, grid.xi_nodes,
                           {2.0, 1.0}, 2.0);
    MatrixXcd mode(g.nx(), g.nxi());
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.nxi(); ++j) mode(i, j) = cplx(0.25 * i, -0.5 * j);
    g.angle_modes[{1, -2}] = mode;

    const std::string path = "/tmp/floq_symbol_roundtrip.json";
    save_grid_symbol(g, path);
    const GridSymbol h = load_grid_symbol(path);
    CHECK(h.l == g.l);
    CHECK(h.grade.m1 == g.grade.m1);
    CHECK(h.grade.m2 == g.grade.m2);
    CHECK((h.x_nodes - g.x_nodes).cwiseAbs().maxCoeff() == 0.0);
    CHECK((h.values - g.values).cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(h.angle_modes.count(ModeIndex{1, -2}) == 1);
    CHECK((h.angle_modes.at(ModeIndex{1, -2}) - mode).cwiseAbs().maxCoeff() == 0.0);
    std::remove(path.c_str());
}
