// Copyright 2026 The qwalk Authors
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

#ifndef QWALK_WALK_HPP
#define QWALK_WALK_HPP

#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace qwalk {

using Complex = std::complex<double>;

/// Parameters of the SU(2) coin
///     [[ e^{i xi} cos(theta),   e^{i zeta} sin(theta) ],
///      [ -e^{-i zeta} sin(theta), e^{-i xi} cos(theta) ]].
struct CoinSpec {
    double theta = 0.0;
    double xi = 0.0;
    double zeta = -std::numbers::pi / 2;

    /// The one-parameter coin [[cos, -i sin], [-i sin, cos]].
    static CoinSpec one_parameter(double theta) {
        return CoinSpec{theta, 0.0, -std::numbers::pi / 2};
    }
};

/// 2x2 complex matrix acting on (up, down).
struct Coin {
    Complex m00, m01, m10, m11;
};

Coin make_coin(const CoinSpec &spec);

/// Internal state alpha|up> + beta|down> of a walker sitting at the origin.
struct SpinState {
    Complex up;
    Complex down;

    bool operator==(const SpinState &other) const = default;
};

/// (|up> + i|down>)/sqrt(2). Symmetric under the one-parameter coin.
SpinState symmetric_i_state();
/// (|up> + |down>)/sqrt(2).
SpinState symmetric_plain_state();
/// Throws InvalidParameter unless |up|^2 + |down|^2 = 1 within 1e-10.
void check_normalized(const SpinState &spin);

enum class ShiftMode { standard, plus, minus };

/// Two-component amplitudes on a finite window of the integer lattice.
/// Storage index i holds position i - offset.
class WalkState {
   public:
    WalkState(std::size_t extent, std::ptrdiff_t offset);

    /// Walker at the origin with room for `max_steps` steps:
    /// extent 2*max_steps+1 centred on 0.
    static WalkState localized(const SpinState &spin, int max_steps);

    std::size_t extent() const {
        return up_.size();
    }
    std::ptrdiff_t offset() const {
        return offset_;
    }
    std::ptrdiff_t min_position() const {
        return -offset_;
    }
    std::ptrdiff_t max_position() const {
        return static_cast<std::ptrdiff_t>(up_.size()) - 1 - offset_;
    }
    bool contains(std::ptrdiff_t position) const {
        return position >= min_position() && position <= max_position();
    }

    Complex &up(std::ptrdiff_t position);
    Complex &down(std::ptrdiff_t position);
    const Complex &up(std::ptrdiff_t position) const;
    const Complex &down(std::ptrdiff_t position) const;

    const std::vector<Complex> &up_storage() const {
        return up_;
    }
    const std::vector<Complex> &down_storage() const {
        return down_;
    }

    double norm_squared() const;

    /// In-place coin on every site.
    void apply(const Coin &coin);
    /// In-place coin on storage indices [begin, end).
    void apply(const Coin &coin, std::size_t begin, std::size_t end);
    /// In-place conditional translation. Throws OutOfBounds if a nonzero
    /// amplitude would be pushed off the window.
    void shift(ShiftMode mode);

    bool operator==(const WalkState &other) const = default;

   private:
    std::size_t index_of(std::ptrdiff_t position) const;

    std::vector<Complex> up_;
    std::vector<Complex> down_;
    std::ptrdiff_t offset_;
};

WalkState apply_coin(WalkState state, const Coin &coin);
WalkState apply_shift(WalkState state, ShiftMode mode);

enum class WalkKind { standard, split_step };

struct WalkSpec {
    WalkKind kind = WalkKind::standard;
    CoinSpec coin1;
    CoinSpec coin2;  // split-step only
    int steps = 0;

    static WalkSpec standard(const CoinSpec &coin, int steps) {
        return WalkSpec{WalkKind::standard, coin, CoinSpec{}, steps};
    }
    static WalkSpec split_step(const CoinSpec &first, const CoinSpec &second, int steps) {
        return WalkSpec{WalkKind::split_step, first, second, steps};
    }
};

/// Position-space probabilities. Index i holds position i - offset.
struct Distribution {
    std::vector<double> probs;
    std::ptrdiff_t offset = 0;

    std::ptrdiff_t min_position() const {
        return -offset;
    }
    std::ptrdiff_t max_position() const {
        return static_cast<std::ptrdiff_t>(probs.size()) - 1 - offset;
    }
    /// Probability at `position`; 0 outside the stored window.
    double at(std::ptrdiff_t position) const;
    double total() const;

    bool operator==(const Distribution &other) const = default;
};

/// Applies the walk operator `spec.steps` times: S*C for a standard walk,
/// S+ C2 S- C1 for a split-step walk.
WalkState evolve(WalkState initial, const WalkSpec &spec);

/// Born-rule probabilities |up|^2 + |down|^2 per site.
Distribution measure(const WalkState &state);

/// Distributions after steps 1..n_max of a single evolution (spec.steps is
/// ignored). Element k-1 is bitwise equal to measure(evolve(initial, k steps)).
std::vector<Distribution> evolve_recording(WalkState initial, const WalkSpec &spec, int n_max);

/// Allocates a 2N+1 window, evolves from `spin` at the origin and measures.
Distribution simulate(const WalkSpec &spec, const SpinState &spin);

/// "position\tprobability" lines, positions ascending.
std::string to_text(const Distribution &dist);
/// Inverse of to_text. Positions must be strictly ascending; gaps read as 0.
Distribution parse_distribution_text(std::string_view text);

}  // namespace qwalk

#endif
