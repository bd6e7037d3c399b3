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
#include <cstdlib>

#include "qecmit/code_switching.hpp"

int main(int argc, char **argv) {
    qecmit::SwitchingConfig config;
    config.d = argc > 1 ? std::atoi(argv[1]) : 3;
    config.epsilon = argc > 2 ? std::atof(argv[2]) : 1e-3;
    config.trials = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 20000;
    config.seed = 1;
    config.validate();
    qecmit::SwitchingRates r = qecmit::estimate_rates(config);
    std::printf("d=%d eps=%g trials=%llu\n", config.d, config.epsilon, (unsigned long long)r.trials);
    std::printf("P_F = %.3g [%.3g, %.3g]  (%.2f eps)\n", r.p_f.rate, r.p_f.lo, r.p_f.hi, r.p_f.rate / config.epsilon);
    std::printf("P_Z = %.3g [%.3g, %.3g]  (%.2f eps)\n", r.p_z.rate, r.p_z.lo, r.p_z.hi, r.p_z.rate / config.epsilon);
    std::printf("P_X = %.3g [%.3g, %.3g]\n", r.p_x.rate, r.p_x.lo, r.p_x.hi);
    return 0;
}
