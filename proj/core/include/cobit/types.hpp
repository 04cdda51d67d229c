#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace cobit {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

// Dense statevectors only; anything bigger than this is out of scope.
inline constexpr long long kMaxTotalDim = 1LL << 20;

inline constexpr double kNormTol = 1e-12;          // squared-norm slack for pure states
inline constexpr double kHermTol = 1e-10;          // entrywise Hermiticity slack
inline constexpr double kPsdTol = 1e-10;           // eigenvalue floor for PSD checks
inline constexpr double kPovmCompletenessTol = 1e-8;
inline constexpr double kIsometryTol = 1e-10;
inline constexpr double kEntropyClip = 1e-12;      // eigenvalues below this count as zero

enum class Party { A, B, E, Ancilla };

std::string to_string(Party p);
Party party_from_string(const std::string& s);

struct Subsystem {
  std::string label;
  Party party = Party::A;
  int dim = 2;

  bool operator==(const Subsystem&) const = default;
};

// Ordered list of named subsystems. The first subsystem is the most
// significant factor of the flat amplitude index.
class RegisterLayout {
 public:
  RegisterLayout() = default;
  explicit RegisterLayout(std::vector<Subsystem> subsystems);

  int size() const { return static_cast<int>(subs_.size()); }
  long long total_dim() const { return total_; }
  const Subsystem& at(int pos) const { return subs_.at(pos); }
  const std::vector<Subsystem>& subsystems() const { return subs_; }

  bool has(const std::string& label) const;
  int position(const std::string& label) const;
  std::vector<int> positions(const std::vector<std::string>& labels) const;
  long long stride(int pos) const { return strides_.at(pos); }

  bool operator==(const RegisterLayout& other) const;

 private:
  std::vector<Subsystem> subs_;
  std::vector<long long> strides_;
  long long total_ = 1;
};

class PureState {
 public:
  PureState() = default;
  PureState(RegisterLayout layout, Vec amplitudes);

  const RegisterLayout& layout() const { return layout_; }
  const Vec& amplitudes() const { return amps_; }
  long long dim() const { return amps_.size(); }

 private:
  RegisterLayout layout_;
  Vec amps_;
};

class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(Mat rho);

  long long dim() const { return rho_.rows(); }
  const Mat& matrix() const { return rho_; }

 private:
  Mat rho_;
};

struct PovmElement {
  std::string label;
  Mat op;
};

// Completeness is enforced at construction: elements sum to the identity.
class Povm {
 public:
  Povm() = default;
  explicit Povm(std::vector<PovmElement> elements);

  int size() const { return static_cast<int>(elements_.size()); }
  long long dim() const { return elements_.empty() ? 0 : elements_.front().op.rows(); }
  const PovmElement& at(int i) const { return elements_.at(i); }
  const std::vector<PovmElement>& elements() const { return elements_; }

 private:
  std::vector<PovmElement> elements_;
};

class Isometry {
 public:
  Isometry() = default;
  explicit Isometry(Mat v);

  long long input_dim() const { return v_.cols(); }
  long long output_dim() const { return v_.rows(); }
  const Mat& matrix() const { return v_; }

 private:
  Mat v_;
};

}  // namespace cobit
