#include <doctest.h>

#include "support/fuzz.hpp"

using namespace baltic::testing;

namespace {

constexpr int kCases = 10000;

void check_report(const FuzzReport& r, bool expect_accepts = true) {
  INFO("first unexpected exception: " << r.first_unexpected);
  CHECK(r.clean());
  CHECK(r.total() == static_cast<std::size_t>(kCases));
  CHECK(r.rejected > 0);
  if (expect_accepts) CHECK(r.accepted > 0);
}

}  // namespace

TEST_CASE("trajectory parser rejects garbage cleanly") {
  Rng rng(201);
  check_report(fuzz_trajectory(rng, kCases));
}

TEST_CASE("ground-truth parser rejects garbage cleanly") {
  Rng rng(202);
  check_report(fuzz_groundtruth(rng, kCases));
}

TEST_CASE("COLMAP parser rejects garbage cleanly") {
  Rng rng(203);
  check_report(fuzz_colmap(rng, kCases));
}

TEST_CASE("PLY reader rejects garbage cleanly") {
  Rng rng(204);
  check_report(fuzz_ply(rng, kCases));
}

TEST_CASE("PNG reader rejects garbage cleanly") {
  Rng rng(205);
  // Most surviving mutations break a CRC or the zlib stream, so accepts are not required.
  check_report(fuzz_png(rng, kCases), false);
}

TEST_CASE("exposure CSV parser rejects garbage cleanly") {
  Rng rng(206);
  check_report(fuzz_exposure_csv(rng, kCases));
}
