#include "support/fuzz.hpp"

#include <exception>
#include <functional>
#include <vector>

#include "baltic/error.hpp"
#include "baltic/io.hpp"

namespace baltic::testing {

namespace {

std::string random_bytes(Rng& rng, std::size_t max_len) {
  std::string s(rng() % (max_len + 1), '\0');
  for (auto& c : s) c = static_cast<char>(rng());
  return s;
}

// Text built from tokens that appear in well-formed inputs, so parsers get past their first checks.
std::string random_tokens(Rng& rng, const std::vector<std::string>& vocab, std::size_t max_tokens) {
  std::string s;
  const std::size_t n = rng() % (max_tokens + 1);
  for (std::size_t i = 0; i < n; ++i) {
    s += vocab[rng() % vocab.size()];
    s += (rng() % 6 == 0) ? "\n" : " ";
  }
  return s;
}

std::string mutate(Rng& rng, std::string s) {
  const int edits = 1 + static_cast<int>(rng() % 8);
  for (int e = 0; e < edits && !s.empty(); ++e) {
    const std::size_t pos = rng() % s.size();
    switch (rng() % 4) {
      case 0: s[pos] = static_cast<char>(rng()); break;
      case 1: s.erase(pos, 1 + rng() % 16); break;
      case 2: s.insert(pos, 1, static_cast<char>(rng())); break;
      default: s.resize(pos); break;
    }
  }
  return s;
}

void attempt(FuzzReport& r, const std::function<void()>& f) {
  try {
    f();
    ++r.accepted;
  } catch (const Error&) {
    ++r.rejected;
  } catch (const std::exception& e) {
    if (r.unexpected++ == 0) r.first_unexpected = e.what();
  }
}

const std::vector<std::string> kNumberVocab{"0", "1", "-1", "0.5", "1e308", "-1e-300", "nan", "inf", "1.0.0",
                                            "#", "x", "", "3", "123456789012345678901234567890", "+2", "1e"};

FuzzReport fuzz_trajectory_grammar(Rng& rng, int cases, bool groundtruth) {
  const auto seed = io::format_trajectory(random_trajectory(rng, 5));
  FuzzReport r;
  for (int i = 0; i < cases; ++i) {
    std::string text;
    switch (i % 3) {
      case 0: text = random_bytes(rng, 200); break;
      case 1: text = random_tokens(rng, kNumberVocab, 24); break;
      default: text = mutate(rng, seed); break;
    }
    if (groundtruth) {
      attempt(r, [&] { io::parse_groundtruth_tf_text(text, io::QuaternionOrder::kWxyz); });
    } else {
      attempt(r, [&] { io::parse_trajectory_text(text); });
    }
  }
  return r;
}

}  // namespace

FuzzReport fuzz_trajectory(Rng& rng, int cases) { return fuzz_trajectory_grammar(rng, cases, false); }

FuzzReport fuzz_groundtruth(Rng& rng, int cases) { return fuzz_trajectory_grammar(rng, cases, true); }

FuzzReport fuzz_colmap(Rng& rng, int cases) {
  const auto seed = io::format_colmap_text(random_colmap_model(rng, 3, 5));
  std::vector<std::string> vocab = kNumberVocab;
  vocab.insert(vocab.end(), {"PINHOLE", "SIMPLE_PINHOLE", "OPENCV", "a.png", "-1"});
  FuzzReport r;
  for (int i = 0; i < cases; ++i) {
    std::string c = seed.cameras, im = seed.images, p = seed.points3d;
    switch (i % 4) {
      case 0:
        c = random_bytes(rng, 120);
        im = random_bytes(rng, 120);
        p = random_bytes(rng, 120);
        break;
      case 1: c = mutate(rng, c); break;
      case 2: im = mutate(rng, im); break;
      default: p = rng() % 2 ? random_tokens(rng, vocab, 14) : mutate(rng, p); break;
    }
    attempt(r, [&] { io::parse_colmap_text(c, im, p); });
  }
  return r;
}

FuzzReport fuzz_ply(Rng& rng, int cases) {
  const auto ascii_bytes = io::format_ply(unit_cube(), io::PlyEncoding::kAscii);
  const auto binary_bytes = io::format_ply(random_cloud(rng, 10));
  const std::string ascii(ascii_bytes.begin(), ascii_bytes.end());
  const std::string binary(binary_bytes.begin(), binary_bytes.end());
  FuzzReport r;
  for (int i = 0; i < cases; ++i) {
    std::string s;
    switch (i % 4) {
      case 0: s = "ply\n" + random_bytes(rng, 200); break;
      case 1: s = mutate(rng, ascii); break;
      case 2: s = mutate(rng, binary); break;
      default:
        // Declared counts far beyond the payload must not trigger huge allocations.
        s = "ply\nformat binary_little_endian 1.0\nelement vertex " +
            std::to_string(rng() % 4 == 0 ? rng() : rng() % 20) +
            "\nproperty float x\nproperty float y\nproperty float z\nend_header\n" + random_bytes(rng, 64);
        break;
    }
    const std::vector<std::uint8_t> bytes(s.begin(), s.end());
    attempt(r, [&] { io::read_ply_bytes(bytes); });
  }
  return r;
}

FuzzReport fuzz_png(Rng& rng, int cases) {
  const auto seed = io::encode_png(random_image(rng, 6, 5, 3));
  FuzzReport r;
  for (int i = 0; i < cases; ++i) {
    std::vector<std::uint8_t> bytes;
    if (i % 2 == 0) {
      const auto s = random_bytes(rng, 100);
      bytes.assign(s.begin(), s.end());
    } else {
      // Keep the signature so the decoder reaches chunk parsing.
      bytes = seed;
      const int edits = 1 + static_cast<int>(rng() % 4);
      for (int e = 0; e < edits && bytes.size() > 8; ++e) {
        const std::size_t pos = 8 + rng() % (bytes.size() - 8);
        if (rng() % 3 == 0) {
          bytes.resize(pos);
        } else {
          bytes[pos] = static_cast<std::uint8_t>(rng());
        }
      }
    }
    attempt(r, [&] { io::read_png_bytes(bytes); });
  }
  return r;
}

FuzzReport fuzz_exposure_csv(Rng& rng, int cases) {
  const std::string seed = "name,exposure\na.png,0.01\nb.png,0.02\n";
  std::vector<std::string> vocab = kNumberVocab;
  vocab.insert(vocab.end(), {",", "name", "exposure", "a.png", "\"q,uoted\"", "\r"});
  FuzzReport r;
  for (int i = 0; i < cases; ++i) {
    std::string text;
    switch (i % 3) {
      case 0: text = random_bytes(rng, 120); break;
      case 1: text = "name,exposure\n" + random_tokens(rng, vocab, 16); break;
      default: text = mutate(rng, seed); break;
    }
    attempt(r, [&] { io::parse_exposure_csv_text(text); });
  }
  return r;
}

}  // namespace baltic::testing
