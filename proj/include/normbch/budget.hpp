#ifndef NORMBCH_BUDGET_HPP
#define NORMBCH_BUDGET_HPP

#include <cstdint>
#include <stdexcept>

namespace nbch {

/// Thrown when an exhaustive search would visit more cases than allowed.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(std::uint64_t required, std::uint64_t budget);
    std::uint64_t required() const { return required_; }
    std::uint64_t budget() const { return budget_; }

private:
    std::uint64_t required_;
    std::uint64_t budget_;
};

}  // namespace nbch

#endif  // NORMBCH_BUDGET_HPP
