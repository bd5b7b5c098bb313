// SPDX-License-Identifier: Apache-2.0
//
// aerial: analysis and simulation of multi-layer aerial networks
// Copyright (C) 2026 The aerial authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

// Reference configurations shared by the tests.

#include <initializer_list>
#include <string>

#include "aerial/network.hpp"

namespace fixture
{

struct Layer
{
    double altitude;
    double rx;
    double tx;
};

inline aerial::NetworkConfig config(std::initializer_list<Layer> layers, double beta = 0.7)
{
    aerial::NetworkConfig c;
    int k = 0;
    for (const auto & l : layers)
    {
        aerial::LayerSpec s;
        s.name = "L" + std::to_string(k++);
        s.altitude = l.altitude;
        s.density_rx = l.rx;
        s.density_tx = l.tx;
        c.layers.push_back(s);
    }
    c.set_uniform_target(beta);
    return c;
}

/// Ground receivers served by one aerial transmitter layer at `altitude`.
inline aerial::NetworkConfig single_layer(double altitude = 100.0, double density = 1e-5, int m_los = 1)
{
    auto c = config({{0.0, 1e-5, 0.0}, {altitude, 0.0, density}});
    c.fading.m_los = m_los;
    return c;
}

/// One aerial layer that both receives and transmits.
inline aerial::NetworkConfig equal_altitude(double altitude = 100.0)
{
    return config({{altitude, 1e-5, 1e-5}});
}

/// Ground receivers with two aerial transmitter layers.
inline aerial::NetworkConfig two_layer(double tx_low = 5e-7, double tx_high = 5e-7)
{
    return config({{0.0, 1e-5, 0.0}, {100.0, 0.0, tx_low}, {200.0, 0.0, tx_high}});
}

/// Ground and aerial nodes that all receive and transmit.
inline aerial::NetworkConfig mixed()
{
    return config({{0.0, 1e-5, 1e-6}, {100.0, 1e-6, 3e-6}});
}

inline const aerial::AssociationRule rn{aerial::Orientation::receiver, aerial::Criterion::nearest};
inline const aerial::AssociationRule rs{aerial::Orientation::receiver, aerial::Criterion::strongest};
inline const aerial::AssociationRule tn{aerial::Orientation::transmitter, aerial::Criterion::nearest};
inline const aerial::AssociationRule ts{aerial::Orientation::transmitter, aerial::Criterion::strongest};

}  // namespace fixture
