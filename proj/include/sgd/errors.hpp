#pragma once

#include <stdexcept>
#include <string>

namespace sgd {

// A parameter lies outside the model's validity range (positivity,
// linearization window, normalizability).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Truncated coefficient sums deviate from unit total probability by more
// than the tolerated tail; usually means N_max is too small.
class NormalizationError : public std::runtime_error {
public:
    explicit NormalizationError(const std::string& what) : std::runtime_error(what) {}
};

// Bad key/value in a scenario config.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A propagated wavepacket left the supported region of the spatial grid.
class GridError : public std::runtime_error {
public:
    explicit GridError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sgd
