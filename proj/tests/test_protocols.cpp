// Copyright 2026 The qndsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracle/oracle.hpp"
#include "qndsim/error.hpp"
#include "qndsim/protocols.hpp"

namespace qndsim {
namespace {

const DetectorModel kIdeal = DetectorModel::ideal();
const NumberInput kOne({}, 1.0, {});
const NumberInput kTwo({}, {}, 1.0);
const NumberInput kVacuum(1.0, {}, {});

std::vector<PolarizationAngle> bloch_sample() {
    std::vector<PolarizationAngle> out;
    for (int k = 0; k < 20; ++k) {
        // Spiral over the sphere, poles included.
        double polar = std::numbers::pi * k / 19.0;
        double azimuth = 2.4 * k;
        out.push_back(PolarizationAngle::from_bloch(polar, azimuth));
    }
    return out;
}

/// c0|0> + c1|1 theta> + c2|2 theta> over (H, V), built by hand.
oracle::Ket polarized_ket(const NumberInput &in, const PolarizationAngle &t, const oracle::Occ &tail) {
    auto with_tail = [&](oracle::Occ head) {
        head.insert(head.end(), tail.begin(), tail.end());
        return head;
    };
    oracle::Ket k;
    auto put = [&](oracle::Occ head, Complex amp) {
        if (std::abs(amp) > 0) {
            k[with_tail(std::move(head))] += amp;
        }
    };
    put({0, 0}, in.c0);
    put({1, 0}, in.c1 * t.alpha);
    put({0, 1}, in.c1 * t.beta);
    put({2, 0}, in.c2 * t.alpha * t.alpha);
    put({1, 1}, in.c2 * std::numbers::sqrt2 * t.alpha * t.beta);
    put({0, 2}, in.c2 * t.beta * t.beta);
    return k;
}

TEST(NumberInput, Validation) {
    EXPECT_THROW(NumberInput(0.5, 0.5, 0.5), DomainError);
    NumberInput n = NumberInput::normalized(1.0, 1.0, 0.0);
    EXPECT_NEAR(std::norm(n.c0), 0.5, 1e-15);
    NumberInput g = NumberInput::from_gamma(0.25);
    EXPECT_NEAR(g.gamma(), 0.25, 1e-15);
    EXPECT_EQ(g.c0, Complex(0.0));
    EXPECT_TRUE(std::isinf(kTwo.gamma()));
    EXPECT_THROW(NumberInput::from_gamma(-1), DomainError);
    EXPECT_THROW(PolarizationAngle(1.0, 1.0), DomainError);
    EXPECT_THROW(PdcSource(0.0), DomainError);
}

TEST(NumberQnd, IdealSuccess) {
    ProtocolOutcome half = number_qnd(kOne, 0.5, kIdeal);
    EXPECT_NEAR(half.success_probability, 1.0 / 8.0, 1e-12);
    EXPECT_NEAR(half.fidelity, 1.0, 1e-12);
    EXPECT_NEAR(number_qnd(kOne, 1.0 / 3.0, kIdeal).success_probability, 4.0 / 27.0, 1e-12);
    for (double t : {0.1, 0.25, 0.6, 0.9}) {
        EXPECT_NEAR(number_qnd(kOne, t, kIdeal).success_probability, t * (1 - t) * (1 - t), 1e-12) << t;
    }
}

TEST(NumberQnd, RejectsTwoPhotonsAndVacuum) {
    for (double t : {0.2, 0.5, 1.0 / 3.0}) {
        ProtocolOutcome two = number_qnd(kTwo, t, kIdeal);
        EXPECT_LE(two.success_probability, 1e-12);
        EXPECT_EQ(two.fidelity, 0.0);
        EXPECT_LE(number_qnd(kVacuum, t, kIdeal).success_probability, 1e-12);
    }
}

TEST(NumberQnd, TransmissionScanPeaksAtOneThird) {
    double best_t = 0.0, best_p = -1.0;
    for (int k = 1; k < 1000; ++k) {
        double t = k * 1e-3;
        double p = number_qnd(kOne, t, kIdeal).success_probability;
        if (p > best_p) {
            best_p = p;
            best_t = t;
        }
    }
    EXPECT_NEAR(best_t, 1.0 / 3.0, 1e-3);
    EXPECT_NEAR(number_qnd(kOne, 1.0 / 3.0, kIdeal).success_probability, 4.0 / 27.0, 1e-9);
}

TEST(NumberQnd, DegenerateTransmission) {
    EXPECT_THROW(number_qnd(kOne, 0.0, kIdeal), DomainError);
    EXPECT_THROW(number_qnd(kOne, 1.0, kIdeal), DomainError);
}

TEST(NumberQnd, LossyAgreesWithOracle) {
    // Rows a, b, c, d of the device map for general T, written out by hand.
    for (double t : {0.5, 1.0 / 3.0}) {
        const double s = std::sqrt(t), r = std::sqrt(1 - t), h = std::numbers::sqrt2 / 2;
        Eigen::MatrixXcd u(4, 4);
        u << s, 0, -r, 0,              //
            0, s, 0, -r,               //
            h * r, h * r, h * s, h * s,  //
            -h * r, h * r, -h * s, h * s;
        for (double gamma : {0.0, 0.1, 1.0, 10.0}) {
            NumberInput in = NumberInput::from_gamma(gamma);
            oracle::Ket ket{{{1, 0, 1, 1}, in.c1}, {{2, 0, 1, 1}, in.c2}};
            for (double eff : {0.5, 0.7, 0.88, 1.0}) {
                ProtocolOutcome o = number_qnd(in, t, {eff, true});
                oracle::Heralded ref =
                    oracle::herald(u, ket, {{0, 0, eff}, {2, 1, eff}, {3, 1, eff}}, {1}, {{{1}, 1.0}});
                EXPECT_NEAR(o.success_probability, ref.probability, 1e-12);
                EXPECT_NEAR(o.fidelity, ref.fidelity, 1e-12) << "T=" << t << " g=" << gamma << " eff=" << eff;
            }
        }
    }
}

TEST(NumberQnd, OnOffDetectorsAgreeWithOracle) {
    Eigen::MatrixXcd u = number_qnd_network(0.5).matrix();
    NumberInput in = NumberInput::from_gamma(1.0);
    oracle::Ket ket{{{1, 0, 1, 1}, in.c1}, {{2, 0, 1, 1}, in.c2}};
    const double eff = 0.8;
    ProtocolOutcome o = number_qnd(in, 0.5, {eff, false});
    oracle::Heralded ref = oracle::herald(u, ket, {{0, 0, eff, true}, {2, 1, eff, true}, {3, 1, eff, true}}, {1},
                                          {{{1}, 1.0}});
    EXPECT_NEAR(o.success_probability, ref.probability, 1e-12);
    EXPECT_NEAR(o.fidelity, ref.fidelity, 1e-12);
}

TEST(NumberQnd, PdcProbes) {
    PdcSource src = PdcSource::from_pair_probability(1e-4);
    ProtocolOutcome o = number_qnd_pdc_probes(kOne, 0.5, kIdeal, src);
    double eps2 = src.pair_probability();
    double pair_weight = eps2 / ((1 - eps2) * (1 - eps2) + eps2);
    EXPECT_NEAR(o.success_probability, pair_weight / 8.0, 1e-15);
    EXPECT_NEAR(o.fidelity, 1.0, 1e-12);
}

TEST(PolQnd, IdealForEveryPolarization) {
    for (const auto &theta : bloch_sample()) {
        ProtocolOutcome o = pol_qnd(kOne, theta, kIdeal);
        EXPECT_NEAR(o.success_probability, std::pow(4.0 / 27.0, 2), 1e-12);
        EXPECT_NEAR(o.fidelity, 1.0, 1e-12);
        EXPECT_LE(pol_qnd(kTwo, theta, kIdeal).success_probability, 1e-12);
        EXPECT_LE(pol_qnd(kVacuum, theta, kIdeal).success_probability, 1e-12);
    }
}

TEST(PolQnd, LossyAgreesWithOracle) {
    Eigen::MatrixXcd u = pol_qnd_network().matrix();
    for (const auto &theta : {PolarizationAngle::diagonal(), PolarizationAngle::horizontal(),
                              PolarizationAngle::from_bloch(1.1, 0.4)}) {
        for (double gamma : {0.0, 1.0, 10.0}) {
            NumberInput in = NumberInput::from_gamma(gamma);
            oracle::Ket ket = polarized_ket(in, theta, {1, 1, 1, 1});
            oracle::Ket target{{{1, 0}, theta.alpha}, {{0, 1}, theta.beta}};
            const double eff = 0.88;
            ProtocolOutcome o = pol_qnd(in, theta, {eff, true});
            oracle::Heralded ref = oracle::herald(u, ket, {{2, 1, eff}, {3, 1, eff}, {4, 1, eff}, {5, 1, eff}},
                                                  {0, 1}, target);
            EXPECT_NEAR(o.success_probability, ref.probability, 1e-12);
            EXPECT_NEAR(o.fidelity, ref.fidelity, 1e-12);
        }
    }
}

TEST(PolQnd, VacuumComponentDoesNotChangeFidelity) {
    PolarizationAngle theta = PolarizationAngle::diagonal();
    double f1 = pol_qnd(NumberInput::normalized(0.0, 1.0, 1.0), theta, {0.88, true}).fidelity;
    double f2 = pol_qnd(NumberInput::normalized(2.0, 1.0, 1.0), theta, {0.88, true}).fidelity;
    EXPECT_NEAR(f1, f2, 1e-12);
}

TEST(PolApprox, Values) {
    EXPECT_EQ(pol_fidelity_approx(0.0, 1.0), 1.0);
    EXPECT_NEAR(pol_fidelity_approx(0.0, 0.88), 0.9858, 1e-4);
    EXPECT_NEAR(pol_fidelity_approx(1.0, 0.88), 0.9467, 1e-4);
}

TEST(Pdc, State) {
    PdcSource src(0.01);
    FockState s = pdc_state(src, "p", "o");
    EXPECT_NEAR(s.norm(), 1.0, 1e-15);
    double n = std::sqrt(std::pow(1 - 1e-4, 2) + 1e-4);
    EXPECT_NEAR(s.amplitude({1, 0, 0, 1}).real(), 0.01 / std::numbers::sqrt2 / n, 1e-15);
    EXPECT_NEAR(s.amplitude({0, 1, 1, 0}).real(), -0.01 / std::numbers::sqrt2 / n, 1e-15);
    FockState tiny = pdc_state(PdcSource(1e-9), "p", "o");
    EXPECT_NEAR(std::abs(tiny.amplitude({0, 0, 0, 0})), 1.0, 1e-15);
    EXPECT_NEAR(PdcSource::from_pair_probability(1e-4).epsilon, 1e-2, 1e-15);
}

TEST(Teleport, SinglePhotonIsTeleported) {
    PdcSource src = PdcSource::from_pair_probability(1e-4);
    for (const auto &theta : bloch_sample()) {
        ProtocolOutcome o = teleport_pol_qnd(kOne, theta, src);
        EXPECT_NEAR(o.fidelity, 1.0, 1e-12);
        EXPECT_GT(o.success_probability, 0.0);
    }
    ProtocolOutcome n = teleport_number_qnd(kOne, src);
    EXPECT_NEAR(n.fidelity, 1.0, 1e-12);
}

TEST(Teleport, VacuumNeverHeralds) {
    ProtocolOutcome o = teleport_number_qnd(kVacuum, PdcSource(0.1));
    EXPECT_EQ(o.success_probability, 0.0);
    EXPECT_EQ(o.fidelity, 0.0);
}

TEST(Teleport, TwoPhotonInputFoolsTheDevice) {
    EXPECT_GT(teleport_number_qnd(kTwo, PdcSource(0.01)).success_probability, 0.1);
    double f_small = teleport_number_qnd(NumberInput::from_gamma(100.0), PdcSource(1e-3)).fidelity;
    double f_big = teleport_number_qnd(NumberInput::from_gamma(100.0), PdcSource(1e-1)).fidelity;
    EXPECT_LT(f_small, 1e-5);
    EXPECT_LT(f_small, f_big);
}

TEST(Teleport, AgreesWithOracle) {
    const double h = std::numbers::sqrt2 / 2;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(6, 6);
    // Channels: in.H in.V p.H p.V o.H o.V; balanced splitters on (in.H, p.H) and (in.V, p.V).
    for (int pol : {0, 1}) {
        u(pol, pol) = h;
        u(pol, 2 + pol) = h;
        u(2 + pol, pol) = -h;
        u(2 + pol, 2 + pol) = h;
    }
    PdcSource src(0.05);
    const double eps = src.epsilon;
    const double norm = std::sqrt(std::pow(1 - eps * eps, 2) + eps * eps);
    for (double gamma : {0.0, 0.01, 1.0}) {
        PolarizationAngle theta = PolarizationAngle::from_bloch(0.7, 1.9);
        NumberInput in = NumberInput::from_gamma(gamma);
        oracle::Ket ket;
        for (const auto &[head, amp] : polarized_ket(in, theta, {})) {
            auto add = [&](oracle::Occ pair, Complex z) {
                oracle::Occ o = head;
                o.insert(o.end(), pair.begin(), pair.end());
                ket[o] += amp * z / norm;
            };
            add({0, 0, 0, 0}, 1 - eps * eps);
            add({1, 0, 0, 1}, eps * h);
            add({0, 1, 1, 0}, -eps * h);
        }
        std::vector<std::vector<oracle::Detection>> patterns;
        for (int hi = 0; hi <= 1; ++hi) {
            for (int hp = 0; hp <= 1; ++hp) {
                patterns.push_back({{0, hi}, {1, 1 - hi}, {2, hp}, {3, 1 - hp}});
            }
        }
        oracle::Ket target{{{1, 0}, theta.alpha}, {{0, 1}, theta.beta}};
        oracle::Heralded ref = oracle::herald_any(u, ket, patterns, {4, 5}, target);
        ProtocolOutcome o = teleport_pol_qnd(in, theta, src);
        EXPECT_NEAR(o.success_probability, ref.probability, 1e-12);
        EXPECT_NEAR(o.fidelity, ref.fidelity, 1e-12);
    }
}

TEST(Kerr, PhasePiResolvesPhotonNumber) {
    KerrQndOutcome one = kerr_qnd(kOne, std::numbers::pi, kIdeal);
    EXPECT_NEAR(one.one_photon.success_probability, 1.0, 1e-12);
    EXPECT_NEAR(one.one_photon.fidelity, 1.0, 1e-12);
    EXPECT_NEAR(one.no_photon.success_probability, 0.0, 1e-12);
    KerrQndOutcome zero = kerr_qnd(kVacuum, std::numbers::pi, kIdeal);
    EXPECT_NEAR(zero.no_photon.success_probability, 1.0, 1e-12);
    EXPECT_NEAR(zero.no_photon.fidelity, 1.0, 1e-12);
}

TEST(Kerr, NoCouplingNoInformation) {
    for (const NumberInput &in : {kOne, kVacuum, NumberInput::normalized(1.0, 1.0, 0.0)}) {
        KerrQndOutcome o = kerr_qnd(in, 0.0, kIdeal);
        EXPECT_NEAR(o.no_photon.success_probability, 1.0, 1e-12);
        EXPECT_NEAR(o.one_photon.success_probability, 0.0, 1e-12);
    }
}

TEST(Kerr, SuperpositionCollapses) {
    KerrQndOutcome o = kerr_qnd(NumberInput::normalized(1.0, 1.0, 0.0), std::numbers::pi, kIdeal);
    EXPECT_NEAR(o.one_photon.success_probability, 0.5, 1e-12);
    EXPECT_NEAR(o.one_photon.fidelity, 1.0, 1e-12);
    EXPECT_NEAR(o.no_photon.fidelity, 1.0, 1e-12);
}

TEST(Calculators, KerrTau) {
    KerrStrengthParams p{3e15, 3e-11, 2e-22, 1e-7};
    double hbar = 1.054571817e-34, eps0 = 8.8541878128e-12;
    double expected = hbar * 9e30 * 3e-11 * 2e-22 / (4 * eps0 * 1e-7);
    EXPECT_NEAR(kerr_tau(p), expected, expected * 1e-12);
    EXPECT_NEAR(kerr_tau(p), 1.60e-18, 1.60e-20);
    KerrStrengthParams doubled = p;
    doubled.volume *= 2;
    EXPECT_NEAR(kerr_tau(doubled), kerr_tau(p) / 2, 1e-30);
    p.chi3 = -1;
    EXPECT_THROW(kerr_tau(p), DomainError);
}

TEST(Calculators, NoonBound) {
    EXPECT_EQ(noon_bound(1), std::numbers::pi / 2);
    EXPECT_EQ(noon_bound(2), std::numbers::pi / 4);
    EXPECT_EQ(noon_bound(100), std::numbers::pi / 200);
    EXPECT_THROW(noon_bound(0), DomainError);
}

}  // namespace
}  // namespace qndsim
