// Copyright 2026 The pauliflow Authors
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

#include "pauliflow/random_model.hpp"

#include <stdexcept>

namespace pauliflow {

SlotSkeleton SlotSkeleton::brickwork(int lx, int ly, int depth) {
    SlotSkeleton s;
    s.lx = lx;
    s.ly = ly;
    for (int t = 0; t < depth; ++t) {
        std::vector<Slot> layer;
        if (t % 2 == 0) {
            for (int y = 0; y < ly; ++y) {
                for (int x = 0; x < lx; ++x) {
                    layer.push_back(Slot{{Coord{x, y}}});
                }
            }
        } else {
            int offset = (t / 2) % 2;
            std::vector<bool> used(static_cast<std::size_t>(lx) * ly, false);
            for (int y = 0; y < ly; ++y) {
                for (int x = offset; x + 1 < lx; x += 2) {
                    layer.push_back(Slot{{Coord{x, y}, Coord{x + 1, y}}});
                    used[y * lx + x] = used[y * lx + x + 1] = true;
                }
            }
            for (int y = 0; y < ly; ++y) {
                for (int x = 0; x < lx; ++x) {
                    if (!used[y * lx + x]) {
                        layer.push_back(Slot{{Coord{x, y}}});
                    }
                }
            }
        }
        s.layers.push_back(std::move(layer));
    }
    return s;
}

SlotSkeleton SlotSkeleton::single_qubit_layers(int lx, int ly, int depth) {
    SlotSkeleton s;
    s.lx = lx;
    s.ly = ly;
    for (int t = 0; t < depth; ++t) {
        std::vector<Slot> layer;
        for (int y = 0; y < ly; ++y) {
            for (int x = 0; x < lx; ++x) {
                layer.push_back(Slot{{Coord{x, y}}});
            }
        }
        s.layers.push_back(std::move(layer));
    }
    return s;
}

std::size_t SlotSkeleton::one_qubit_slot_count() const {
    std::size_t count = 0;
    for (const auto &layer : layers) {
        for (const auto &slot : layer) {
            if (slot.support.size() == 1) {
                ++count;
            }
        }
    }
    return count;
}

GatePolicy gate_policy_from_name(const std::string &name) {
    if (name == "always-t" || name == "always-T-when-free") {
        return GatePolicy::always_t_when_free;
    }
    if (name == "uniform" || name == "uniform-Clifford-or-T") {
        return GatePolicy::uniform_clifford_or_t;
    }
    throw std::invalid_argument("unknown gate policy: " + name);
}

const char *gate_policy_name(GatePolicy p) {
    switch (p) {
        case GatePolicy::always_t_when_free: return "always-T-when-free";
        case GatePolicy::uniform_clifford_or_t: return "uniform-Clifford-or-T";
    }
    return "?";
}

Circuit sample_random_model(const SlotSkeleton &skeleton, double q, GatePolicy policy,
                            uint64_t seed) {
    if (q < 0.0 || q > 1.0) {
        throw std::invalid_argument("free-slot probability must lie in [0, 1]");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const CliffordGate one_q_cliffords[] = {CliffordGate::H, CliffordGate::S, CliffordGate::Sdg,
                                            CliffordGate::X, CliffordGate::Y, CliffordGate::Z};

    Circuit c(skeleton.lx, skeleton.ly);
    for (const auto &slayer : skeleton.layers) {
        std::vector<Gate> layer;
        for (const auto &slot : slayer) {
            if (slot.support.size() == 2) {
                switch (policy) {
                    case GatePolicy::always_t_when_free:
                        layer.push_back(Gate::clifford(CliffordGate::CZ, slot.support));
                        break;
                    case GatePolicy::uniform_clifford_or_t: {
                        int pick = static_cast<int>(unit(rng) * 4.0);
                        std::vector<Coord> support = slot.support;
                        if (pick == 1) {
                            std::swap(support[0], support[1]);
                        }
                        CliffordGate g = (pick <= 1)   ? CliffordGate::CNOT
                                         : (pick == 2) ? CliffordGate::CZ
                                                       : CliffordGate::SWAP;
                        layer.push_back(Gate::clifford(g, support));
                        break;
                    }
                }
                continue;
            }
            bool free_slot = unit(rng) < q;
            switch (policy) {
                case GatePolicy::always_t_when_free:
                    if (free_slot) {
                        layer.push_back(Gate::t(slot.support[0]));
                    } else {
                        layer.push_back(Gate::clifford(CliffordGate::H, slot.support));
                    }
                    break;
                case GatePolicy::uniform_clifford_or_t: {
                    if (free_slot) {
                        int pick = static_cast<int>(unit(rng) * 7.0);
                        if (pick >= 6) {
                            layer.push_back(Gate::t(slot.support[0]));
                        } else {
                            layer.push_back(Gate::clifford(one_q_cliffords[pick], slot.support));
                        }
                    } else {
                        int pick = static_cast<int>(unit(rng) * 6.0);
                        layer.push_back(Gate::clifford(one_q_cliffords[std::min(pick, 5)],
                                                       slot.support));
                    }
                    break;
                }
            }
        }
        c.layers.push_back(std::move(layer));
    }
    return c;
}

double t_gate_fraction(const Circuit &circuit, const SlotSkeleton &skeleton) {
    std::size_t slots = skeleton.one_qubit_slot_count();
    if (slots == 0) {
        return 0.0;
    }
    std::size_t t_count = 0;
    for (const auto &layer : circuit.layers) {
        for (const Gate &g : layer) {
            if (g.kind == GateKind::T) {
                ++t_count;
            }
        }
    }
    return static_cast<double>(t_count) / static_cast<double>(slots);
}

}  // namespace pauliflow
