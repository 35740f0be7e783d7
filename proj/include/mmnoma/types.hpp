// SPDX-License-Identifier: Apache-2.0
//
// mmnoma: joint beamforming and power allocation for mmWave-NOMA downlinks
// Copyright (C) 2026 The mmnoma Authors
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

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace mmnoma {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Operand shapes do not agree. `operand()` names the offending argument.
class DimensionError : public std::invalid_argument {
public:
    DimensionError(std::string operand, std::size_t expected, std::size_t actual)
        : std::invalid_argument(operand + ": expected dimension " + std::to_string(expected) +
                                ", got " + std::to_string(actual)),
          operand_(std::move(operand)) {}

    const std::string& operand() const noexcept { return operand_; }

private:
    std::string operand_;
};

// Invalid configuration value or violated type invariant.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Why a rate-constrained problem has no solution.
enum class Infeasibility {
    Budget,      // minimum rates of users 2..K need more than the power budget
    Rate1,       // the strongest user's own minimum rate is violated
    NullChannel  // a user with a positive minimum rate has zero effective gain
};

constexpr std::string_view to_string(Infeasibility reason) noexcept {
    switch (reason) {
    case Infeasibility::Budget: return "budget";
    case Infeasibility::Rate1: return "rate1";
    case Infeasibility::NullChannel: return "null-channel";
    }
    return "unknown";
}

// Either a feasible value or the reason none exists. Infeasibility is an
// ordinary result here, not an error.
template <typename T>
class Outcome {
public:
    Outcome(T value) : state_(std::move(value)) {}
    Outcome(Infeasibility reason) : state_(reason) {}

    bool feasible() const noexcept { return std::holds_alternative<T>(state_); }
    explicit operator bool() const noexcept { return feasible(); }

    const T& value() const& {
        if (!feasible())
            throw std::logic_error("Outcome::value() on infeasible result (" +
                                   std::string(to_string(reason())) + ")");
        return std::get<T>(state_);
    }
    T&& value() && {
        if (!feasible())
            throw std::logic_error("Outcome::value() on infeasible result (" +
                                   std::string(to_string(reason())) + ")");
        return std::get<T>(std::move(state_));
    }
    const T* operator->() const { return &value(); }
    const T& operator*() const { return value(); }

    Infeasibility reason() const {
        if (feasible())
            throw std::logic_error("Outcome::reason() on feasible result");
        return std::get<Infeasibility>(state_);
    }

private:
    std::variant<T, Infeasibility> state_;
};

// System parameters shared by every stage. Powers are linear.
struct SystemConfig {
    std::size_t n_tx = 1;      // BS antennas N
    std::size_t n_rx = 1;      // antennas per user M
    std::size_t n_users = 1;   // K
    double total_power = 1.0;  // P
    double noise_power = 1.0;  // sigma^2
    std::vector<double> min_rates;  // r_k in bits/s/Hz, one per user

    void validate() const;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

} // namespace mmnoma
