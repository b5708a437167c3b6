#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ps2 {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
  public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

// Input outside the rational class (sin, exp, fractional exponents, ...).
class UnsupportedExpression : public ParseError {
  public:
    using ParseError::ParseError;
};

class DivisionByZero : public Error {
  public:
    DivisionByZero() : Error("division by zero") {}
};

class InternalError : public Error {
  public:
    using Error::Error;
};

class LimitExceeded : public Error {
  public:
    using Error::Error;
};

class EmptySolution : public Error {
  public:
    EmptySolution() : Error("inconsistent system") {}
};

class NoElementaryFactorAtThisDegree : public Error {
  public:
    NoElementaryFactorAtThisDegree() : Error("no integrating factor from the given Darboux polynomials") {}
};

class UnsupportedIntegral : public Error {
  public:
    using Error::Error;
};

class NothingFound : public Error {
  public:
    explicit NothingFound(int max_degree, const std::string& what = "no verified (S, R) pair")
        : Error(what + " up to degree " + std::to_string(max_degree)), max_degree_(max_degree) {}

    int max_degree() const { return max_degree_; }

  private:
    int max_degree_;
};

}  // namespace ps2
