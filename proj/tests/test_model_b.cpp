#include "r0colloc/eigensolve.hpp"
#include "r0colloc/errors.hpp"
#include "r0colloc/model_b.hpp"
#include "ngo_check.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace r0colloc;

TEST(PresetB, B1Matrices) {
    const ModelBProblem b1 = preset_b("B1");
    const CollocationMesh mesh(1, 1.0);
    const OperatorPair p = assemble_b(b1, mesh);
    ASSERT_EQ(p.dim(), 2);
    const double e = std::exp(-28.0);
    EXPECT_NEAR(p.mortality(0, 0), -1.0, 1e-12);
    EXPECT_NEAR(p.mortality(0, 1), -2.0 * e, 1e-24);
    EXPECT_NEAR(p.mortality(1, 0), -1.0, 1e-14);
    EXPECT_NEAR(p.mortality(1, 1), 3.0, 1e-14);
    EXPECT_EQ(p.birth(0, 0), 0.0);
    EXPECT_EQ(p.birth(0, 1), 0.0);
    EXPECT_NEAR(p.birth(1, 0), 728.0, 1e-10);
    EXPECT_NEAR(p.birth(1, 1), 728.0 * e, 1e-20);
}

TEST(PresetB, ZeroThetaGivesUnitBoundaryRow) {
    const ModelBProblem b = preset_b("B1", {{"theta", 0.0}});
    const CollocationMesh mesh(6, 1.0);
    const OperatorPair p = assemble_b(b, mesh);
    EXPECT_EQ(p.mortality(0, 0), 1.0);
    EXPECT_EQ(p.mortality.row(0).tail(6).cwiseAbs().maxCoeff(), 0.0);
}

TEST(PresetB, ExcludedLastNode) {
    for (auto name : {"B2.1", "B2.2"}) {
        const ModelBProblem b = preset_b(name);
        EXPECT_TRUE(b.exclude_last_node);
        const CollocationMesh mesh(10, b.length);
        const auto idx = active_indices(b, mesh);
        ASSERT_EQ(idx.size(), 10u);
        EXPECT_EQ(idx.back(), 9);
        EXPECT_EQ(assemble_b(b, mesh).dim(), 10);
    }
    ModelBProblem keep = preset_b("B2.2");
    keep.exclude_last_node = false;
    EXPECT_THROW(assemble_b(keep, CollocationMesh(10, 1.0)), NumericalError);
}

TEST(PresetB, FertilityIntegratesToOne) {
    for (auto name : {"B1", "B3"}) {
        const ModelBProblem b = preset_b(name);
        const CollocationMesh mesh(200, b.length);
        double s = 0.0;
        for (int i = 0; i <= 200; ++i) s += mesh.weights()[i] * b.fertility(mesh.node(i));
        EXPECT_NEAR(s, 1.0, 1e-8) << name;
    }
}

TEST(PresetB, Errors) {
    EXPECT_THROW(preset_b("B4"), std::invalid_argument);
    EXPECT_THROW(preset_b("B1", {{"theta", 1.5}}), std::invalid_argument);
    EXPECT_THROW(preset_b("B2.2", {{"theta", 0.5}}), std::invalid_argument);
    EXPECT_THROW(preset_b("B1", {{"l", -1.0}}), std::invalid_argument);
}

TEST(ExplicitNgo, ConstantIsEigenfunctionForB1) {
    const ModelBProblem b1 = preset_b("B1");
    const CollocationMesh mesh(20, 1.0);
    const Vector out = ngo_apply_explicit(b1, [](double) { return 1.0; }, mesh);
    for (Eigen::Index i = 0; i < out.size(); ++i) EXPECT_NEAR(out[i], 2.0, 1e-8);
}

TEST(ExplicitNgo, ZeroMapsToZero) {
    const ModelBProblem b1 = preset_b("B1");
    const CollocationMesh mesh(10, 1.0);
    EXPECT_EQ(ngo_apply_explicit(b1, [](double) { return 0.0; }, mesh).cwiseAbs().maxCoeff(), 0.0);
}

TEST(ExplicitNgo, B22EigenfunctionReproduced) {
    const ModelBProblem b = preset_b("B2.2");
    const CollocationMesh mesh(30, 1.0);
    const auto psi = [](double x) { return x * x * (1 - x) * (1 - x); };
    const Vector out = ngo_apply_explicit(b, psi, mesh);
    const auto idx = active_indices(b, mesh);
    ASSERT_EQ(static_cast<std::size_t>(out.size()), idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k)
        EXPECT_NEAR(out[k], 1.59375 * psi(mesh.node(idx[k])), 1e-10);
}

TEST(ExplicitNgo, AgreesWithDiscreteProduct) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto name : {"B1", "B3"}) {
        const ModelBProblem b = preset_b(name);
        const CollocationMesh mesh(100, b.length);
        for (int trial = 0; trial < 3; ++trial) {
            double c[4];
            for (double& v : c) v = u(rng);
            const auto psi = [&](double x) { return c[0] + x * (c[1] + x * (c[2] + x * c[3])); };
            EXPECT_LE(test_support::ngo_discrepancy(b, mesh, psi), 1e-6) << name;
        }
    }
}

TEST(ExplicitNgo, B2SmoothWhenPsiVanishesAtMaximalAge) {
    const ModelBProblem b = preset_b("B2.2");
    const CollocationMesh mesh(40, b.length);
    const auto psi = [](double x) { return (1 - x) * (0.3 + x - 0.7 * x * x); };
    EXPECT_LE(test_support::ngo_discrepancy(b, mesh, psi), 1e-10);
}

TEST(ExplicitNgo, B2AlgebraicRateForGenericPsi) {
    // psi(l) != 0 gives phi a (l - x) log(l - x) term: second-order convergence only.
    const ModelBProblem b = preset_b("B2.2");
    const auto psi = [](double x) { return 1 + x - x * x; };
    const double e1 = test_support::ngo_discrepancy(b, CollocationMesh(50, 1.0), psi);
    const double e2 = test_support::ngo_discrepancy(b, CollocationMesh(100, 1.0), psi);
    EXPECT_NEAR(std::log2(e1 / e2), 2.0, 0.2);
}

TEST(ExplicitNgo, SampleOverloadMatchesFunction) {
    const ModelBProblem b = preset_b("B1");
    const CollocationMesh mesh(30, 1.0);
    const auto psi = [](double x) { return 1.0 + x * x; };
    std::vector<double> samples;
    for (double x : mesh.nodes()) samples.push_back(psi(x));
    EXPECT_LE((ngo_apply_explicit(b, samples, mesh) - ngo_apply_explicit(b, psi, mesh))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-12);
    EXPECT_THROW(ngo_apply_explicit(b, std::vector<double>(3, 1.0), mesh), std::invalid_argument);
}

TEST(UpperBound, SeparableKernelWithoutVerticalTransmission) {
    const ModelBProblem b = preset_b("B1", {{"theta", 0.0}});
    const CollocationMesh mesh(200, 1.0);
    EXPECT_NEAR(upper_bound_b(b, mesh), 52.0 * (1.0 - std::exp(-28.0)), 1e-8);
}

TEST(UpperBound, ZeroKernel) {
    ModelBProblem b = preset_b("B3");
    b.kernel = [](double, double) { return 0.0; };
    EXPECT_EQ(upper_bound_b(b, CollocationMesh(20, b.length)), 0.0);
}

TEST(UpperBound, DominatesRZero) {
    for (auto name : kModelBPresets) {
        const ModelBProblem b = preset_b(name);
        const CollocationMesh mesh(100, b.length);
        const double r0 = spectral_radius(assemble_b(b, mesh)).r0;
        EXPECT_GE(upper_bound_b(b, mesh), r0) << name;
    }
}

TEST(AssembleB, DiscreteBoundaryCondition) {
    for (auto name : {"B1", "B3"}) {
        const ModelBProblem b = preset_b(name);
        const CollocationMesh mesh(80, b.length);
        const OperatorPair p = assemble_b(b, mesh);
        const R0Result r = spectral_radius(p);
        ASSERT_TRUE(r.eigvec.has_value());
        const Vector& phi = *r.eigvec;
        double s = 0.0;
        for (int j = 0; j <= 80; ++j) s += mesh.weights()[j] * b.fertility(mesh.node(j)) * phi[j];
        EXPECT_NEAR(phi[0], b.theta * s, 1e-8 * phi.cwiseAbs().maxCoeff()) << name;
    }
}
