#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace iolb {

// Base class for every failure the library reports. Violations that are data
// (validate(), side-condition checklists) are returned, not thrown.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Malformed text input (CDAG, trace, hierarchy, machine, annotation files).
class ParseError : public Error {
  public:
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

// A pebble-game rule was broken. `step` is 1-based; 0 means "at completion".
class GameError : public Error {
  public:
    GameError(std::size_t step, std::string rule, std::int64_t vertex, const std::string& what)
        : Error(format(step, rule, vertex, what)), step_(step), rule_(std::move(rule)), vertex_(vertex) {}

    [[nodiscard]] std::size_t step() const { return step_; }
    [[nodiscard]] const std::string& rule() const { return rule_; }
    [[nodiscard]] std::int64_t vertex() const { return vertex_; }

  private:
    static std::string format(std::size_t step, const std::string& rule, std::int64_t vertex,
                              const std::string& what) {
        std::string s;
        if (step == 0) {
            s = "game incomplete";
        } else {
            s = "step " + std::to_string(step) + " (" + rule;
            if (vertex >= 0) s += " on vertex " + std::to_string(vertex);
            s += ")";
        }
        return s + ": " + what;
    }

    std::size_t step_;
    std::string rule_;
    std::int64_t vertex_;
};

// An exhaustive search ran out of its state budget.
class BudgetExhausted : public Error {
  public:
    BudgetExhausted(const std::string& what, std::optional<std::int64_t> best_upper,
                    std::optional<std::int64_t> best_lower)
        : Error(what), best_upper_(best_upper), best_lower_(best_lower) {}

    // Cost of the best complete game found so far, if any.
    [[nodiscard]] std::optional<std::int64_t> best_upper() const { return best_upper_; }
    // Largest value proven to be a lower bound when the search stopped.
    [[nodiscard]] std::optional<std::int64_t> best_lower() const { return best_lower_; }

  private:
    std::optional<std::int64_t> best_upper_;
    std::optional<std::int64_t> best_lower_;
};

// No complete game exists (e.g. too few red pebbles to fire some vertex).
class Infeasible : public Error {
  public:
    using Error::Error;
};

}  // namespace iolb
