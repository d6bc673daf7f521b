// Writes the bundled synthetic driving fixture: 700 s of 4 Hz samples over
// seven 100 s segments (rest, city, highway, city, highway, city, rest).
// City segments raise gsr and hr; marker peaks at each segment boundary.
//
//   make_fixture > data/fixture.csv

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <random>

namespace {

class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : rng_(seed) {}
  /// Uniform on [-half_width, half_width].
  double operator()(double half_width) {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return (2.0 * u - 1.0) * half_width;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

int main() {
  constexpr int kSeconds = 700;
  constexpr int kSegment = 100;
  constexpr int kSamplesPerSecond = 4;
  Uniform noise(20091007);

  std::printf("time,emg,gsr,hr,ecg,resp,marker\n");
  for (int s = 0; s < kSeconds; ++s) {
    const int segment = s / kSegment;
    const double city = (segment == 1 || segment == 3 || segment == 5) ? 1.0 : 0.0;
    const double slow = std::sin(2.0 * std::numbers::pi * s / 233.0);
    const double burst = std::sin(2.0 * std::numbers::pi * s / 37.0) > 0.0 ? 1.0 : 0.0;

    const double emg = burst + 0.63 * slow + noise(0.1);
    const double gsr = city - 0.74 * slow + noise(0.22);
    const double hr = city + 0.27 * slow + noise(0.65);
    const double ecg = 0.5 * city + 0.77 * slow + noise(1.0) - 0.05 * burst;
    const double resp =
        0.53 * (noise(1.0) + noise(1.0) + noise(1.0) + noise(1.0)) - 0.53 * slow;
    const bool boundary = s > 0 && s % kSegment == 0;
    const double marker = boundary ? 5.0 + 0.1 * segment : 0.2 + noise(0.1);

    for (int k = 0; k < kSamplesPerSecond; ++k) {
      const int ms = s * 1000 + k * (1000 / kSamplesPerSecond);
      std::printf("%d,%.5f,%.5f,%.5f,%.5f,%.5f,%.5f\n", ms, emg + noise(0.02),
                  gsr + noise(0.02), hr + noise(0.02), ecg + noise(0.02), resp + noise(0.02),
                  marker + noise(0.01));
    }
  }
  return 0;
}
