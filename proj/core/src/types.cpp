#include "cobit/types.hpp"

#include <Eigen/Eigenvalues>
#include <set>
#include <stdexcept>

namespace cobit {

std::string to_string(Party p) {
  switch (p) {
    case Party::A: return "A";
    case Party::B: return "B";
    case Party::E: return "E";
    case Party::Ancilla: return "ancilla";
  }
  throw std::invalid_argument("unknown party");
}

Party party_from_string(const std::string& s) {
  if (s == "A") return Party::A;
  if (s == "B") return Party::B;
  if (s == "E") return Party::E;
  if (s == "ancilla") return Party::Ancilla;
  throw std::invalid_argument("unknown party: " + s);
}

RegisterLayout::RegisterLayout(std::vector<Subsystem> subsystems) : subs_(std::move(subsystems)) {
  if (subs_.empty()) throw std::invalid_argument("layout must contain at least one subsystem");
  std::set<std::string> seen;
  for (const auto& s : subs_) {
    if (s.label.empty()) throw std::invalid_argument("subsystem label must be nonempty");
    if (s.dim < 2) throw std::invalid_argument("subsystem dim must be >= 2: " + s.label);
    if (!seen.insert(s.label).second)
      throw std::invalid_argument("duplicate subsystem label: " + s.label);
  }
  total_ = 1;
  for (const auto& s : subs_) {
    if (total_ > kMaxTotalDim / s.dim)
      throw std::invalid_argument("total dimension exceeds the dense-simulation cap");
    total_ *= s.dim;
  }
  strides_.assign(subs_.size(), 1);
  for (int i = static_cast<int>(subs_.size()) - 2; i >= 0; --i)
    strides_[i] = strides_[i + 1] * subs_[i + 1].dim;
}

bool RegisterLayout::has(const std::string& label) const {
  for (const auto& s : subs_)
    if (s.label == label) return true;
  return false;
}

int RegisterLayout::position(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (subs_[i].label == label) return i;
  throw std::invalid_argument("no subsystem labeled '" + label + "'");
}

std::vector<int> RegisterLayout::positions(const std::vector<std::string>& labels) const {
  std::vector<int> out;
  out.reserve(labels.size());
  std::set<int> seen;
  for (const auto& l : labels) {
    int p = position(l);
    if (!seen.insert(p).second) throw std::invalid_argument("repeated target label: " + l);
    out.push_back(p);
  }
  return out;
}

bool RegisterLayout::operator==(const RegisterLayout& other) const {
  return subs_ == other.subs_;
}

PureState::PureState(RegisterLayout layout, Vec amplitudes)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
  if (amps_.size() != layout_.total_dim())
    throw std::invalid_argument("amplitude count does not match layout dimension");
  double n2 = amps_.squaredNorm();
  if (std::abs(n2 - 1.0) > kNormTol)
    throw std::invalid_argument("state is not normalized: |norm^2 - 1| = " +
                                std::to_string(std::abs(n2 - 1.0)));
}

namespace {

void check_hermitian(const Mat& m, const char* what) {
  if (m.rows() != m.cols()) throw std::invalid_argument(std::string(what) + " must be square");
  double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > kHermTol)
    throw std::invalid_argument(std::string(what) + " is not Hermitian (deviation " +
                                std::to_string(dev) + ")");
}

double min_eigenvalue(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

DensityMatrix::DensityMatrix(Mat rho) : rho_(std::move(rho)) {
  check_hermitian(rho_, "density matrix");
  double tr = rho_.trace().real();
  if (std::abs(tr - 1.0) > kHermTol)
    throw std::invalid_argument("density matrix trace differs from 1 by " +
                                std::to_string(std::abs(tr - 1.0)));
  if (min_eigenvalue(rho_) < -kPsdTol)
    throw std::invalid_argument("density matrix has a negative eigenvalue");
}

Povm::Povm(std::vector<PovmElement> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw std::invalid_argument("POVM needs at least one element");
  long long d = elements_.front().op.rows();
  Mat sum = Mat::Zero(d, d);
  std::set<std::string> seen;
  for (const auto& e : elements_) {
    if (e.label.empty()) throw std::invalid_argument("POVM element label must be nonempty");
    if (!seen.insert(e.label).second)
      throw std::invalid_argument("duplicate POVM element label: " + e.label);
    if (e.op.rows() != d || e.op.cols() != d)
      throw std::invalid_argument("POVM elements must share one square dimension");
    check_hermitian(e.op, "POVM element");
    if (min_eigenvalue(e.op) < -kPsdTol)
      throw std::invalid_argument("POVM element '" + e.label + "' is not PSD");
    sum += e.op;
  }
  double dev = (sum - Mat::Identity(d, d)).cwiseAbs().maxCoeff();
  if (dev > kPovmCompletenessTol)
    throw std::invalid_argument("POVM elements do not sum to identity (deviation " +
                                std::to_string(dev) + ")");
}

Isometry::Isometry(Mat v) : v_(std::move(v)) {
  if (v_.rows() < v_.cols())
    throw std::invalid_argument("isometry must not shrink its input space");
  Mat gram = v_.adjoint() * v_;
  double dev = (gram - Mat::Identity(v_.cols(), v_.cols())).cwiseAbs().maxCoeff();
  if (dev > kIsometryTol)
    throw std::invalid_argument("columns are not orthonormal (deviation " +
                                std::to_string(dev) + ")");
}

}  // namespace cobit
