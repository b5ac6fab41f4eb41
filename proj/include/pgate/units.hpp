// Copyright 2026 The pgate Authors
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

#pragma once

namespace pgate::units {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// Physical constants (SI).
inline constexpr double hbar = 1.054571817e-34;   // J s
inline constexpr double eps0 = 8.8541878128e-12;  // F/m
inline constexpr double c0 = 2.99792458e8;        // m/s

// Atomic units for the interaction coefficients.
inline constexpr double au_c3 = 6.460e-49;              // J m^3
inline constexpr double au_polarizability = 1.649e-41;  // J (m/V)^2

// Config files and CLI flags carry nu = omega/2pi in MHz, times in us and
// lengths in um. Everything internal is rad/s, s, m. This is the one
// conversion boundary.
inline constexpr double mhz(double nu_mhz) { return two_pi * 1e6 * nu_mhz; }
inline constexpr double to_mhz(double omega) { return omega / (two_pi * 1e6); }
inline constexpr double ghz(double nu_ghz) { return two_pi * 1e9 * nu_ghz; }
inline constexpr double us(double t_us) { return 1e-6 * t_us; }
inline constexpr double to_us(double t) { return 1e6 * t; }
inline constexpr double ns(double t_ns) { return 1e-9 * t_ns; }
inline constexpr double to_ns(double t) { return 1e9 * t; }
inline constexpr double um(double x_um) { return 1e-6 * x_um; }
inline constexpr double to_um(double x) { return 1e6 * x; }

}  // namespace pgate::units
