#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>

#include "cvxsr/image_io.hpp"
#include "cvxsr/plane.hpp"
#include "cvxsr/rng.hpp"
#include "support/test_util.hpp"

using namespace cvxsr;
namespace fs = std::filesystem;

namespace {

// Reference files produced by an independent encoder (PIL), embedded so the
// decoder is checked against ground truth rather than our own writer.
const unsigned char kGray8_2x2[] = { // samples row-major: 0, 128, 255, 64
    0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d,
    0x49, 0x48, 0x44, 0x52, 0x00, 0x00, 0x00, 0x02, 0x00, 0x00, 0x00, 0x02,
    0x08, 0x00, 0x00, 0x00, 0x00, 0x57, 0xdd, 0x52, 0xf8, 0x00, 0x00, 0x00,
    0x0e, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9c, 0x63, 0x60, 0x68, 0x60, 0xf8,
    0xef, 0x00, 0x00, 0x04, 0x44, 0x01, 0xc0, 0xea, 0x6a, 0xe1, 0xdf, 0x00,
    0x00, 0x00, 0x00, 0x49, 0x45, 0x4e, 0x44, 0xae, 0x42, 0x60, 0x82};

const unsigned char kGray16_2x2[] = { // samples: 0, 30000, 65535, 12345
    0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d,
    0x49, 0x48, 0x44, 0x52, 0x00, 0x00, 0x00, 0x02, 0x00, 0x00, 0x00, 0x02,
    0x10, 0x00, 0x00, 0x00, 0x00, 0x07, 0x4d, 0x8e, 0xbb, 0x00, 0x00, 0x00,
    0x12, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9c, 0x63, 0x60, 0x60, 0x28, 0x35,
    0x60, 0xfa, 0xff, 0x7f, 0x37, 0x27, 0x00, 0x0c, 0xdf, 0x03, 0x6a, 0xc6,
    0x69, 0x4f, 0xf3, 0x00, 0x00, 0x00, 0x00, 0x49, 0x45, 0x4e, 0x44, 0xae,
    0x42, 0x60, 0x82};

const unsigned char kRgb8_2x2[] = { // (10,20,30),(40,50,60),(70,80,90),(100,110,120)
    0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d,
    0x49, 0x48, 0x44, 0x52, 0x00, 0x00, 0x00, 0x02, 0x00, 0x00, 0x00, 0x02,
    0x08, 0x02, 0x00, 0x00, 0x00, 0xfd, 0xd4, 0x9a, 0x73, 0x00, 0x00, 0x00,
    0x16, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9c, 0x63, 0xe4, 0x12, 0x91, 0x93,
    0x93, 0x93, 0x63, 0xb1, 0xb1, 0xb1, 0x91, 0x93, 0x93, 0x03, 0x00, 0x0a,
    0x56, 0x01, 0xaa, 0x01, 0x4a, 0x65, 0x38, 0x00, 0x00, 0x00, 0x00, 0x49,
    0x45, 0x4e, 0x44, 0xae, 0x42, 0x60, 0x82};

const unsigned char kRgba8_2x2[] = { // has an alpha channel
    0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d,
    0x49, 0x48, 0x44, 0x52, 0x00, 0x00, 0x00, 0x02, 0x00, 0x00, 0x00, 0x02,
    0x08, 0x06, 0x00, 0x00, 0x00, 0x72, 0xb6, 0x0d, 0x24, 0x00, 0x00, 0x00,
    0x14, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9c, 0x63, 0x64, 0x64, 0x62, 0x66,
    0x61, 0x60, 0x60, 0x60, 0x60, 0x62, 0x80, 0x02, 0x00, 0x00, 0xcc, 0x00,
    0x0e, 0xe8, 0xb7, 0xf5, 0x84, 0x00, 0x00, 0x00, 0x00, 0x49, 0x45, 0x4e,
    0x44, 0xae, 0x42, 0x60, 0x82};

fs::path write_bytes(const fs::path &dir, const char *name,
                     const unsigned char *bytes, size_t len) {
  const fs::path p = dir / name;
  std::ofstream out(p, std::ios::binary);
  out.write(reinterpret_cast<const char *>(bytes), static_cast<long>(len));
  return p;
}

MultiImage gray_image(Plane p) {
  MultiImage img;
  img.channels.push_back(std::move(p));
  return img;
}

} // namespace

TEST_CASE("load decodes an externally encoded 8-bit gray PNG") {
  const auto dir = testutil::make_temp_dir("io");
  const auto p = write_bytes(dir, "g8.png", kGray8_2x2, sizeof kGray8_2x2);

  const MultiImage img = load_image(p.string());
  REQUIRE(img.channel_count() == 1);
  REQUIRE(img.width() == 2);
  REQUIRE(img.height() == 2);
  CHECK(img.channels[0].at(0, 0) == 0.0);
  CHECK(img.channels[0].at(1, 0) == doctest::Approx(128.0 / 255.0).epsilon(1e-15));
  CHECK(img.channels[0].at(0, 1) == 1.0);
  CHECK(img.channels[0].at(1, 1) == doctest::Approx(64.0 / 255.0).epsilon(1e-15));
  fs::remove_all(dir);
}

TEST_CASE("load rescales 16-bit samples by 1/65535") {
  const auto dir = testutil::make_temp_dir("io");
  const auto p = write_bytes(dir, "g16.png", kGray16_2x2, sizeof kGray16_2x2);

  const MultiImage img = load_image(p.string());
  REQUIRE(img.channel_count() == 1);
  CHECK(img.channels[0].at(0, 0) == 0.0);
  CHECK(img.channels[0].at(1, 0) == doctest::Approx(30000.0 / 65535.0).epsilon(1e-15));
  CHECK(img.channels[0].at(0, 1) == 1.0);
  CHECK(img.channels[0].at(1, 1) == doctest::Approx(12345.0 / 65535.0).epsilon(1e-15));
  fs::remove_all(dir);
}

TEST_CASE("load keeps RGB channel order") {
  const auto dir = testutil::make_temp_dir("io");
  const auto p = write_bytes(dir, "rgb.png", kRgb8_2x2, sizeof kRgb8_2x2);

  const MultiImage img = load_image(p.string());
  REQUIRE(img.channel_count() == 3);
  CHECK(img.channels[0].at(0, 0) == doctest::Approx(10.0 / 255.0));
  CHECK(img.channels[1].at(0, 0) == doctest::Approx(20.0 / 255.0));
  CHECK(img.channels[2].at(0, 0) == doctest::Approx(30.0 / 255.0));
  CHECK(img.channels[0].at(1, 1) == doctest::Approx(100.0 / 255.0));
  fs::remove_all(dir);
}

TEST_CASE("load error paths are distinguishable") {
  const auto dir = testutil::make_temp_dir("io");

  SUBCASE("missing file") {
    try {
      load_image((dir / "nope.png").string());
      FAIL("expected ImageIoError");
    } catch (const ImageIoError &e) {
      CHECK(e.status() == IoStatus::missing_file);
    }
  }

  SUBCASE("truncated file fails to decode") {
    const auto p = write_bytes(dir, "trunc.png", kGray8_2x2, 40);
    try {
      load_image(p.string());
      FAIL("expected ImageIoError");
    } catch (const ImageIoError &e) {
      CHECK(e.status() == IoStatus::decode_failed);
    }
  }

  SUBCASE("not a PNG at all") {
    const auto p = dir / "junk.png";
    std::ofstream(p) << "definitely not an image";
    try {
      load_image(p.string());
      FAIL("expected ImageIoError");
    } catch (const ImageIoError &e) {
      CHECK(e.status() == IoStatus::decode_failed);
    }
  }

  SUBCASE("alpha channel is rejected") {
    const auto p = write_bytes(dir, "rgba.png", kRgba8_2x2, sizeof kRgba8_2x2);
    try {
      load_image(p.string());
      FAIL("expected ImageIoError");
    } catch (const ImageIoError &e) {
      CHECK(e.status() == IoStatus::unsupported_format);
    }
  }

  SUBCASE("unwritable output path") {
    MultiImage img = gray_image(Plane(2, 2, 0.5));
    try {
      save_image(img, (dir / "no_dir" / "x.png").string());
      FAIL("expected ImageIoError");
    } catch (const ImageIoError &e) {
      CHECK(e.status() == IoStatus::write_failed);
    }
  }

  fs::remove_all(dir);
}

TEST_CASE("save quantizes round-half-up and clamps") {
  const auto dir = testutil::make_temp_dir("io");
  Plane p(3, 1);
  p.at(0, 0) = 0.5;  // 127.5 rounds up to byte 128
  p.at(1, 0) = 1.2;  // clamps to 255
  p.at(2, 0) = -0.3; // clamps to 0
  const auto path = (dir / "q.png").string();
  save_image(gray_image(p), path);

  const MultiImage back = load_image(path);
  CHECK(back.channels[0].at(0, 0) == doctest::Approx(128.0 / 255.0).epsilon(1e-15));
  CHECK(back.channels[0].at(1, 0) == 1.0);
  CHECK(back.channels[0].at(2, 0) == 0.0);
  fs::remove_all(dir);
}

TEST_CASE("all-black image stays exactly zero through a round trip") {
  const auto dir = testutil::make_temp_dir("io");
  const auto path = (dir / "black.png").string();
  save_image(gray_image(Plane(4, 3, 0.0)), path);
  const MultiImage back = load_image(path);
  for (double v : back.channels[0].data) CHECK(v == 0.0);
  fs::remove_all(dir);
}

TEST_CASE("save-load deviation is at most 1/255 for every byte value") {
  // Exhaustive: all 256 lattice points plus the midpoints between them.
  const auto dir = testutil::make_temp_dir("io");
  Plane p(256, 2);
  for (int i = 0; i < 256; ++i) {
    p.at(i, 0) = i / 255.0;
    p.at(i, 1) = std::min(1.0, (i + 0.49) / 255.0);
  }
  const auto path = (dir / "lattice.png").string();
  save_image(gray_image(p), path);
  const MultiImage back = load_image(path);
  CHECK(max_abs_diff(back.channels[0], p) <= 1.0 / 255.0);
  // Lattice points survive exactly.
  for (int i = 0; i < 256; ++i)
    CHECK(back.channels[0].at(i, 0) == doctest::Approx(i / 255.0).epsilon(1e-15));
  fs::remove_all(dir);
}

TEST_CASE("save-load round trip of a random plane, then idempotence") {
  const auto dir = testutil::make_temp_dir("io");
  Rng rng(42);
  Plane p = testutil::random_plane(17, 9, rng);

  const auto path1 = (dir / "a.png").string();
  const auto path2 = (dir / "b.png").string();
  save_image(gray_image(p), path1);
  const MultiImage once = load_image(path1);
  CHECK(max_abs_diff(once.channels[0], p) <= 1.0 / 255.0 + 1e-12);

  // A second save-load must be the identity on the 8-bit lattice.
  save_image(once, path2);
  const MultiImage twice = load_image(path2);
  CHECK(max_abs_diff(twice.channels[0], once.channels[0]) == 0.0);
  fs::remove_all(dir);
}

TEST_CASE("RGB channel order survives a save-load round trip") {
  const auto dir = testutil::make_temp_dir("io");
  Rng rng(7);
  MultiImage img;
  for (int c = 0; c < 3; ++c)
    img.channels.push_back(testutil::random_plane(8, 5, rng));
  const auto path = (dir / "rgb.png").string();
  save_image(img, path);
  const MultiImage back = load_image(path);
  REQUIRE(back.channel_count() == 3);
  for (int c = 0; c < 3; ++c)
    CHECK(max_abs_diff(back.channels[c], img.channels[c]) <= 1.0 / 255.0 + 1e-12);
  fs::remove_all(dir);
}

TEST_CASE("image validation rejects malformed channel stacks") {
  MultiImage empty;
  CHECK_THROWS_AS(validate_image(empty), std::invalid_argument);

  MultiImage ragged;
  ragged.channels.push_back(Plane(2, 2));
  ragged.channels.push_back(Plane(3, 2));
  CHECK_THROWS_AS(validate_image(ragged), std::invalid_argument);

  MultiImage five;
  for (int i = 0; i < 5; ++i) five.channels.push_back(Plane(2, 2));
  CHECK_THROWS_AS(validate_image(five), std::invalid_argument);

  MultiImage two;
  two.channels.push_back(Plane(2, 2));
  two.channels.push_back(Plane(2, 2));
  CHECK_THROWS_AS(save_image(two, "/tmp/two.png"), ImageIoError);
}
