#pragma once

#include <chrono>
#include <limits>

#include "ps2/errors.hpp"

namespace ps2 {

// Wall-clock budget shared by a search stage and everything it calls.
class Deadline {
  public:
    using Clock = std::chrono::steady_clock;

    Deadline() : at_(Clock::time_point::max()) {}
    explicit Deadline(double seconds) : Deadline() {
        if (seconds > 0 && seconds < 1e9)
            at_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
    }

    static Deadline never() { return Deadline(); }

    bool expired() const { return Clock::now() >= at_; }
    void check() const {
        if (expired()) throw LimitExceeded("timeout");
    }

    // The earlier of the two.
    Deadline min(const Deadline& o) const {
        Deadline d;
        d.at_ = at_ < o.at_ ? at_ : o.at_;
        return d;
    }

  private:
    Clock::time_point at_;
};

}  // namespace ps2
