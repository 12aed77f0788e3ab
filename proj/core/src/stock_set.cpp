#include "tprophet/stock_set.hpp"

#include "tprophet/errors.hpp"

namespace tprophet {

namespace {

void check_index(std::size_t e) {
  if (e >= StockSet::kMaxElements) {
    throw InputError("stock index " + std::to_string(e) + " exceeds the supported maximum of " +
                     std::to_string(StockSet::kMaxElements - 1));
  }
}

}  // namespace

StockSet::StockSet(std::initializer_list<std::size_t> elements) {
  for (std::size_t e : elements) insert(e);
}

StockSet StockSet::from_elements(const std::vector<std::size_t>& elements) {
  StockSet s;
  for (std::size_t e : elements) s.insert(e);
  return s;
}

StockSet StockSet::full(std::size_t k) {
  if (k > kMaxElements) throw CapacityError("ground set larger than 64 stocks");
  return StockSet(k == kMaxElements ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1);
}

void StockSet::insert(std::size_t e) {
  check_index(e);
  bits_ |= std::uint64_t{1} << e;
}

void StockSet::erase(std::size_t e) {
  if (e < kMaxElements) bits_ &= ~(std::uint64_t{1} << e);
}

StockSet StockSet::with(std::size_t e) const {
  StockSet copy = *this;
  copy.insert(e);
  return copy;
}

std::vector<std::size_t> StockSet::elements() const {
  std::vector<std::size_t> out;
  out.reserve(size());
  for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(rest)));
  }
  return out;
}

std::string StockSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (std::size_t e : elements()) {
    if (!first) out += ",";
    out += std::to_string(e + 1);
    first = false;
  }
  return out + "}";
}

}  // namespace tprophet
