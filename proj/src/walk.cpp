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

#include "qwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qwalk/error.hpp"
#include "qwalk/text_format.hpp"

namespace qwalk {

Coin make_coin(const CoinSpec &spec) {
    if (!std::isfinite(spec.theta) || !std::isfinite(spec.xi) || !std::isfinite(spec.zeta)) {
        throw InvalidParameter("coin angles must be finite");
    }
    const double c = std::cos(spec.theta);
    const double s = std::sin(spec.theta);
    return Coin{
        std::polar(1.0, spec.xi) * c,
        std::polar(1.0, spec.zeta) * s,
        -std::polar(1.0, -spec.zeta) * s,
        std::polar(1.0, -spec.xi) * c,
    };
}

SpinState symmetric_i_state() {
    const double r = 1.0 / std::sqrt(2.0);
    return SpinState{Complex(r, 0.0), Complex(0.0, r)};
}

SpinState symmetric_plain_state() {
    const double r = 1.0 / std::sqrt(2.0);
    return SpinState{Complex(r, 0.0), Complex(r, 0.0)};
}

void check_normalized(const SpinState &spin) {
    const double n = std::norm(spin.up) + std::norm(spin.down);
    if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-10) {
        throw InvalidParameter("initial spin state must satisfy |alpha|^2 + |beta|^2 = 1, got " +
                               format_double(n));
    }
}

WalkState::WalkState(std::size_t extent, std::ptrdiff_t offset)
    : up_(extent), down_(extent), offset_(offset) {
    if (extent == 0) {
        throw InvalidParameter("walk state extent must be positive");
    }
}

WalkState WalkState::localized(const SpinState &spin, int max_steps) {
    if (max_steps < 0) {
        throw InvalidParameter("step count must be nonnegative");
    }
    check_normalized(spin);
    WalkState state(2 * static_cast<std::size_t>(max_steps) + 1, max_steps);
    state.up(0) = spin.up;
    state.down(0) = spin.down;
    return state;
}

std::size_t WalkState::index_of(std::ptrdiff_t position) const {
    if (!contains(position)) {
        throw OutOfBounds("position " + std::to_string(position) + " outside lattice window [" +
                          std::to_string(min_position()) + ", " + std::to_string(max_position()) + "]");
    }
    return static_cast<std::size_t>(position + offset_);
}

Complex &WalkState::up(std::ptrdiff_t position) {
    return up_[index_of(position)];
}
Complex &WalkState::down(std::ptrdiff_t position) {
    return down_[index_of(position)];
}
const Complex &WalkState::up(std::ptrdiff_t position) const {
    return up_[index_of(position)];
}
const Complex &WalkState::down(std::ptrdiff_t position) const {
    return down_[index_of(position)];
}

double WalkState::norm_squared() const {
    double total = 0.0;
    for (std::size_t i = 0; i < up_.size(); i++) {
        total += std::norm(up_[i]) + std::norm(down_[i]);
    }
    return total;
}

void WalkState::apply(const Coin &coin) {
    apply(coin, 0, up_.size());
}

void WalkState::apply(const Coin &coin, std::size_t begin, std::size_t end) {
    end = std::min(end, up_.size());
    for (std::size_t i = begin; i < end; i++) {
        const Complex u = up_[i];
        const Complex d = down_[i];
        up_[i] = coin.m00 * u + coin.m01 * d;
        down_[i] = coin.m10 * u + coin.m11 * d;
    }
}

namespace {

// Storage moves are plain element copies, so probabilities are permuted
// without any arithmetic.
void move_left(std::vector<Complex> &v) {
    if (v.front() != Complex(0.0, 0.0)) {
        throw OutOfBounds("amplitude at the left lattice boundary; state is under-allocated");
    }
    std::copy(v.begin() + 1, v.end(), v.begin());
    v.back() = Complex(0.0, 0.0);
}

void move_right(std::vector<Complex> &v) {
    if (v.back() != Complex(0.0, 0.0)) {
        throw OutOfBounds("amplitude at the right lattice boundary; state is under-allocated");
    }
    std::copy_backward(v.begin(), v.end() - 1, v.end());
    v.front() = Complex(0.0, 0.0);
}

}  // namespace

void WalkState::shift(ShiftMode mode) {
    switch (mode) {
        case ShiftMode::standard:
            // Check both sides before touching either so a failed shift
            // leaves the state intact.
            if (up_.front() != Complex(0.0, 0.0) || down_.back() != Complex(0.0, 0.0)) {
                throw OutOfBounds("amplitude at the lattice boundary; state is under-allocated");
            }
            move_left(up_);
            move_right(down_);
            break;
        case ShiftMode::plus:
            move_right(down_);
            break;
        case ShiftMode::minus:
            move_left(up_);
            break;
    }
}

WalkState apply_coin(WalkState state, const Coin &coin) {
    state.apply(coin);
    return state;
}

WalkState apply_shift(WalkState state, ShiftMode mode) {
    state.shift(mode);
    return state;
}

double Distribution::at(std::ptrdiff_t position) const {
    if (position < min_position() || position > max_position()) {
        return 0.0;
    }
    return probs[static_cast<std::size_t>(position + offset)];
}

double Distribution::total() const {
    double t = 0.0;
    for (double p : probs) {
        t += p;
    }
    return t;
}

namespace {

void check_state_normalized(const WalkState &state) {
    const double n = state.norm_squared();
    if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-10) {
        throw InvalidParameter("initial walk state is not normalized (norm^2 = " + format_double(n) + ")");
    }
}

// Repeated application of the walk operator. Coins only touch the
// storage range [lo, hi) that can hold nonzero amplitude; it grows by at
// most one site per side per step.
class Stepper {
   public:
    Stepper(const WalkSpec &spec, const WalkState &initial)
        : kind_(spec.kind), coin1_(make_coin(spec.coin1)), coin2_(make_coin(spec.coin2)) {
        const auto &up = initial.up_storage();
        const auto &down = initial.down_storage();
        lo_ = up.size();
        hi_ = 0;
        for (std::size_t i = 0; i < up.size(); i++) {
            if (up[i] != Complex(0.0, 0.0) || down[i] != Complex(0.0, 0.0)) {
                lo_ = std::min(lo_, i);
                hi_ = i + 1;
            }
        }
        if (lo_ >= hi_) {
            lo_ = hi_ = 0;
        }
    }

    void step(WalkState &state) {
        const std::size_t extent = state.extent();
        state.apply(coin1_, lo_, hi_);
        if (kind_ == WalkKind::standard) {
            state.shift(ShiftMode::standard);
        } else {
            state.shift(ShiftMode::minus);
            state.apply(coin2_, lo_ > 0 ? lo_ - 1 : 0, hi_);
            state.shift(ShiftMode::plus);
        }
        lo_ = lo_ > 0 ? lo_ - 1 : 0;
        hi_ = std::min(hi_ + 1, extent);
    }

   private:
    WalkKind kind_;
    Coin coin1_;
    Coin coin2_;
    std::size_t lo_;
    std::size_t hi_;
};

}  // namespace

WalkState evolve(WalkState initial, const WalkSpec &spec) {
    if (spec.steps < 0) {
        throw InvalidParameter("step count must be nonnegative");
    }
    check_state_normalized(initial);
    Stepper stepper(spec, initial);
    for (int n = 0; n < spec.steps; n++) {
        stepper.step(initial);
    }
    return initial;
}

Distribution measure(const WalkState &state) {
    Distribution d;
    d.offset = state.offset();
    d.probs.resize(state.extent());
    const auto &up = state.up_storage();
    const auto &down = state.down_storage();
    for (std::size_t i = 0; i < d.probs.size(); i++) {
        d.probs[i] = std::norm(up[i]) + std::norm(down[i]);
    }
    return d;
}

std::vector<Distribution> evolve_recording(WalkState initial, const WalkSpec &spec, int n_max) {
    if (n_max < 0) {
        throw InvalidParameter("step count must be nonnegative");
    }
    check_state_normalized(initial);
    Stepper stepper(spec, initial);
    std::vector<Distribution> out;
    out.reserve(static_cast<std::size_t>(n_max));
    for (int n = 0; n < n_max; n++) {
        stepper.step(initial);
        out.push_back(measure(initial));
    }
    return out;
}

Distribution simulate(const WalkSpec &spec, const SpinState &spin) {
    return measure(evolve(WalkState::localized(spin, spec.steps), spec));
}

std::string to_text(const Distribution &dist) {
    std::string out;
    out.reserve(dist.probs.size() * 24);
    for (std::size_t i = 0; i < dist.probs.size(); i++) {
        out += std::to_string(static_cast<std::ptrdiff_t>(i) - dist.offset);
        out += '\t';
        append_double(out, dist.probs[i]);
        out += '\n';
    }
    return out;
}

Distribution parse_distribution_text(std::string_view text) {
    std::vector<std::pair<std::ptrdiff_t, double>> entries;
    std::size_t line_no = 0;
    while (!text.empty()) {
        line_no++;
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty()) {
            continue;
        }
        auto tab = line.find('\t');
        if (tab == std::string_view::npos) {
            throw ParseError(line_no, "expected 'position<TAB>probability'");
        }
        double pos_value = 0.0;
        double prob = 0.0;
        if (!parse_double(line.substr(0, tab), pos_value) || pos_value != std::floor(pos_value)) {
            throw ParseError(line_no, "position is not an integer");
        }
        if (!parse_double(line.substr(tab + 1), prob) || !(prob >= 0.0 && prob <= 1.0)) {
            throw ParseError(line_no, "probability is not a number in [0, 1]");
        }
        auto pos = static_cast<std::ptrdiff_t>(pos_value);
        if (!entries.empty() && pos <= entries.back().first) {
            throw ParseError(line_no, "positions must be strictly ascending");
        }
        entries.emplace_back(pos, prob);
    }
    if (entries.empty()) {
        throw ParseError(0, "distribution file has no entries");
    }
    Distribution d;
    d.offset = -entries.front().first;
    d.probs.assign(static_cast<std::size_t>(entries.back().first - entries.front().first + 1), 0.0);
    for (const auto &[pos, prob] : entries) {
        d.probs[static_cast<std::size_t>(pos + d.offset)] = prob;
    }
    return d;
}

}  // namespace qwalk
