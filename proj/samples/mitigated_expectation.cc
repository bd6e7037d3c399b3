// Copyright 2026 qecmit Contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>

#include "qecmit/mitigation.hpp"
#include "qecmit/rate_learning.hpp"

int main() {
    const double true_rate = 0.03;
    qecmit::LearningRun learned = qecmit::learn_error_rate(true_rate, 100000, 5);
    std::printf("learned eps_bar = %.5f +- %.5f (true %.5f)\n", learned.fit.eps_bar, learned.fit.std_error, true_rate);

    qecmit::Circuit c = qecmit::from_text("QUBITS 2\nSTEP\nH 0\nH 1\nSTEP\nT 0\nSTEP\nCNOT 0 1\nSTEP\nT 1\n");
    qecmit::PauliString obs = qecmit::PauliString::from_str("XY");
    qecmit::QpdEstimate est = qecmit::qpd_estimate(c, obs, learned.fit.eps_bar, 200000, 9);
    std::printf("ideal <XY> = %.5f\n", qecmit::exact_expectation(c, obs));
    std::printf("mitigated  = %.5f +- %.5f (gamma_total %.4f)\n", est.mean, est.std_error, est.gamma_total);
    return 0;
}
