#include "cobit/random.hpp"

#include <Eigen/QR>
#include <stdexcept>

namespace cobit {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {
std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}
}  // namespace

std::mt19937_64 substream(std::uint64_t seed, std::string_view tag, std::uint64_t index) {
  std::uint64_t s = splitmix64(seed ^ fnv1a(tag));
  s = splitmix64(s ^ index);
  return std::mt19937_64(s);
}

Mat haar_unitary(int d, std::mt19937_64& rng) {
  if (d < 1) throw std::invalid_argument("haar_unitary needs dimension >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double re = gauss(rng);
      double im = gauss(rng);
      g(i, j) = cplx(re, im);
    }
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(d, d);
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    cplx rj = r(j, j);
    double mag = std::abs(rj);
    cplx phase = mag > 0 ? rj / mag : cplx(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

Vec haar_vector(int d, std::mt19937_64& rng) {
  if (d < 1) throw std::invalid_argument("haar_vector needs dimension >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(d);
  for (int i = 0; i < d; ++i) {
    double re = gauss(rng);
    double im = gauss(rng);
    v(i) = cplx(re, im);
  }
  v.normalize();
  return v;
}

}  // namespace cobit
