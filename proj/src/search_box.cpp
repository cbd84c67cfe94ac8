#include "cicrdbo/search_box.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cicrdbo/errors.hpp"

namespace cicrdbo {

SearchBox SearchBox::uniform(std::size_t dim, double lo, double hi) {
  SearchBox box{std::vector<double>(dim, lo), std::vector<double>(dim, hi)};
  box.validate();
  return box;
}

void SearchBox::validate() const {
  if (lower.empty()) throw DomainError("search box has zero dimensions");
  if (lower.size() != upper.size()) {
    throw DomainError("search box bound lengths differ: " + std::to_string(lower.size()) +
                      " vs " + std::to_string(upper.size()));
  }
  for (std::size_t d = 0; d < lower.size(); ++d) {
    if (!std::isfinite(lower[d]) || !std::isfinite(upper[d]) || !(lower[d] < upper[d])) {
      throw DomainError("degenerate search box in dimension " + std::to_string(d));
    }
  }
}

double SearchBox::clamp(std::size_t d, double v) const {
  return std::clamp(v, lower[d], upper[d]);
}

void SearchBox::clamp(std::span<double> x) const {
  for (std::size_t d = 0; d < x.size(); ++d) x[d] = clamp(d, x[d]);
}

bool SearchBox::contains(std::span<const double> x) const {
  if (x.size() != dim()) return false;
  for (std::size_t d = 0; d < x.size(); ++d) {
    if (!(x[d] >= lower[d] && x[d] <= upper[d])) return false;
  }
  return true;
}

}  // namespace cicrdbo
