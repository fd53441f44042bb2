#include "gwm/tolls.hpp"

#include <cmath>
#include <sstream>

namespace gwm {

cplx TollSequence::eval(std::size_t n) const {
  const double ln = std::log(double(n));
  switch (kind_) {
    case Kind::kPower:
      return std::exp(alpha_ * ln);
    case Kind::kLog:
      return cplx{ln};
    case Kind::kCenteredPower:
      return std::exp(alpha_ * ln) - center_;
    case Kind::kCenteredLog:
      return cplx{ln} - center_;
    case Kind::kCustom:
      return n - 1 < custom_.size() ? custom_[n - 1] : cplx{};
  }
  return cplx{};
}

TruncatedSeries TollSequence::series(std::size_t truncation) const {
  TruncatedSeries out(truncation);
  for (std::size_t n = 1; n <= truncation; ++n) out[n] = eval(n);
  return out;
}

std::string TollSequence::describe() const {
  std::ostringstream os;
  auto fmt = [&](cplx v) {
    os << v.real();
    if (v.imag() != 0.0) os << (v.imag() > 0 ? "+" : "") << v.imag() << "i";
  };
  switch (kind_) {
    case Kind::kPower:
      os << "pow:";
      fmt(alpha_);
      break;
    case Kind::kLog:
      os << "log";
      break;
    case Kind::kCenteredPower:
      os << "cpow:";
      fmt(alpha_);
      break;
    case Kind::kCenteredLog:
      os << "clog";
      break;
    case Kind::kCustom:
      os << "custom[" << custom_.size() << "]";
      break;
  }
  return os.str();
}

bool TollSequence::operator==(const TollSequence& o) const {
  return kind_ == o.kind_ && alpha_ == o.alpha_ && center_ == o.center_ &&
         custom_ == o.custom_;
}

}  // namespace gwm
