#include <doctest.h>

#include <algorithm>
#include <random>

#include "ocm/acquisition.hpp"
#include "ocm/centroid_image.hpp"
#include "ocm/coincidence.hpp"
#include "ocm/error.hpp"
#include "ocm/streaming.hpp"

using namespace ocm;

namespace {

PhotonEvent ev(std::uint64_t f, int ix, int iy, int t) {
  return {f, static_cast<std::uint16_t>(ix), static_cast<std::uint16_t>(iy), static_cast<std::uint16_t>(t)};
}

// Uncorrelated random events, sorted, a few per frame.
std::vector<PhotonEvent> random_stream(std::uint64_t frames, double mean_per_frame, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::poisson_distribution<int> count(mean_per_frame);
  std::uniform_int_distribution<int> px(0, 31), bin(0, 219);
  std::vector<PhotonEvent> out;
  for (std::uint64_t f = 0; f < frames; ++f) {
    const std::size_t start = out.size();
    const int n = count(rng);
    for (int k = 0; k < n; ++k) out.push_back(ev(f, px(rng), px(rng), bin(rng)));
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(start), out.end(), event_less);
  }
  return out;
}

}  // namespace

TEST_SUITE("recon") {
  TEST_CASE("pairing honours the window and the Chebyshev cut") {
    const std::vector<PhotonEvent> frame = {ev(0, 0, 0, 10), ev(0, 1, 1, 11), ev(0, 5, 0, 12), ev(0, 9, 9, 17)};
    std::vector<CoincidencePair> pairs;
    std::uint64_t rejected = 0;
    const auto n = pair_frame(frame, CoincidenceOptions{}, pairs, rejected);
    // (0,1): Chebyshev 1, cut. (0,2) and (1,2) pass. (2,3): dt = 5 > 4. (0,3), (1,3): outside window.
    CHECK(n == 2);
    CHECK(rejected == 1);
    CHECK(pairs[0].cx() == 5);
    CHECK(pairs[0].dx() == -5);
    CHECK(pairs[1].swapped().ix1 == 5);

    CoincidenceOptions wide;
    wide.window_bins = 7;
    wide.min_xi = 0;
    pairs.clear();
    CHECK(pair_frame(frame, wide, pairs, rejected) == 6);
  }

  TEST_CASE("strict mode drops frames with several pairs") {
    const std::vector<PhotonEvent> events = {ev(0, 0, 0, 1), ev(0, 10, 0, 1), ev(0, 20, 0, 2), ev(1, 0, 0, 5), ev(1, 9, 9, 6)};
    CoincidenceOptions strict;
    strict.strict_one_pair = true;
    const auto r = extract_coincidences(events, strict);
    CHECK(r.pairs.size() == 1);
    CHECK(r.pairs[0].frame_id == 1);
    CHECK(r.multi_pair_frames == 1);
    CHECK(r.dropped_multi_pairs == 3);
    CHECK(r.frames_with_events == 2);
    const auto loose = extract_coincidences(events);
    CHECK(loose.pairs.size() == 4);
  }

  TEST_CASE("unsorted input is rejected") {
    const std::vector<PhotonEvent> events = {ev(1, 0, 0, 1), ev(0, 10, 0, 1)};
    CHECK_THROWS_AS(extract_coincidences(events), Error);
    const std::vector<PhotonEvent> late = {ev(0, 0, 0, 9), ev(0, 10, 0, 1)};
    CHECK_THROWS_AS(require_sorted(late), Error);
  }

  TEST_CASE("parallel coincidence extraction matches serial") {
    const auto events = random_stream(50000, 3.0, 1);
    const auto s = extract_coincidences(events, {}, Exec::Serial);
    const auto p = extract_coincidences(events, {}, Exec::Parallel);
    CHECK(s.pairs.size() == p.pairs.size());
    CHECK(std::equal(s.pairs.begin(), s.pairs.end(), p.pairs.begin(), [](const auto& a, const auto& b) {
      return a.frame_id == b.frame_id && a.ix1 == b.ix1 && a.iy1 == b.iy1 && a.ix2 == b.ix2 && a.iy2 == b.iy2 && a.t1 == b.t1;
    }));
    CHECK(s.rejected_by_cut == p.rejected_by_cut);
  }

  TEST_CASE("admissible cell counts match brute-force enumeration") {
    DetectorConfig cfg;
    cfg.n_pixels_x = cfg.n_pixels_y = 6;
    cfg.active_width = cfg.active_height = 6 * cfg.pixel_pitch;
    for (int cut : {0, 1, 2}) {
      const auto cov = admissible_cells(cfg, cut);
      std::vector<double> ref(cov.size(), 0.0);
      for (int a = 0; a < 36; ++a)
        for (int b = a + 1; b < 36; ++b) {
          const int ax = a % 6, ay = a / 6, bx = b % 6, by = b / 6;
          if (chebyshev(ax - bx, ay - by) <= cut) continue;
          ref[static_cast<std::size_t>((ay + by) * 11 + ax + bx)] += 1.0;
        }
      CHECK(cov == ref);
    }
  }

  TEST_CASE("centroid image geometry and averaging") {
    DetectorConfig cfg;
    const std::vector<CoincidencePair> pairs = {{0, 0, 0, 2, 0, 1, 1}, {1, 2, 0, 0, 0, 1, 1}, {2, 31, 31, 29, 28, 1, 2}};
    const auto img = centroid_image(pairs, nullptr, CentroidMode::SumOverXi, cfg, 1);
    CHECK(img.nx == 63);
    CHECK(img.spacing_x == doctest::Approx(cfg.pixel_pitch / 2));
    CHECK(img.origin_x == doctest::Approx(-0.7e-3 + cfg.pixel_pitch / 2));
    CHECK(img.at(2, 0) == 2.0);
    CHECK(img.at(60, 59) == 1.0);
    CHECK(img.grid().x(31) == doctest::Approx(0.0).scale(1.0));
    const auto avg = centroid_image(pairs, nullptr, CentroidMode::AverageOverXi, cfg, 1);
    CHECK(avg.coverage[2] == 1.0);  // only pixels 0 and 2 along x, same row
    CHECK(avg.at(2, 0) == 2.0);
    CHECK(avg.at(0, 0) == 0.0);
    CHECK(centroid_mode_from_string("average") == CentroidMode::AverageOverXi);
  }

  TEST_CASE("accidental estimate: scale and serial/parallel agreement") {
    CHECK(accidental_scale(1000, 1) == doctest::Approx(0.5 * 1000 / 999));
    CHECK_THROWS_AS(accidental_scale(1, 1), Error);
    DetectorConfig cfg;
    const auto events = random_stream(20000, 4.0, 2);
    const auto s = estimate_accidentals(events, 20000, {}, cfg, 1, Exec::Serial);
    const auto p = estimate_accidentals(events, 20000, {}, cfg, 1, Exec::Parallel);
    CHECK(s.raw.counts == p.raw.counts);
    CHECK(s.raw.total() > 0.0);
    const auto k2 = estimate_accidentals(events, 20000, {}, cfg, 2);
    CHECK(k2.offset == 2);
  }

  TEST_CASE("accidental subtraction of an uncorrelated stream leaves zero on average") {
    DetectorConfig cfg;
    const std::uint64_t frames = 100000;
    const auto events = random_stream(frames, 3.0, 3);
    const auto pairs = extract_coincidences(events);
    const auto acc = estimate_accidentals(events, frames, {}, cfg);
    const auto img = centroid_image(pairs.pairs, &acc, CentroidMode::SumOverXi, cfg, 1);
    double sum = 0.0, var = 0.0;
    for (std::size_t k = 0; k < img.values.size(); ++k) {
      sum += img.values[k];
      var += img.variance[k];
    }
    CHECK(std::fabs(sum) < 4.0 * std::sqrt(var));
    CHECK(img.accidental_corrected);
  }

  TEST_CASE("streaming reconstruction equals the batch functions") {
    DetectorConfig cfg;
    const std::uint64_t frames = 30000;
    auto events = random_stream(frames, 2.5, 4);
    // Leave the last frames empty so n_frames exceeds the last event frame.
    events.erase(std::remove_if(events.begin(), events.end(), [](const auto& e) { return e.frame_id > 29990; }), events.end());
    StreamingReconstructor rec({}, 1, true);
    rec.begin(cfg, 0, frames);
    for (std::size_t k = 0; k < events.size(); k += 777)
      rec.consume(std::span(events).subspan(k, std::min<std::size_t>(777, events.size() - k)));
    rec.end();
    const auto batch = extract_coincidences(events);
    const auto acc = estimate_accidentals(events, frames, {}, cfg);
    CHECK(rec.n_pairs() == batch.pairs.size());
    CHECK(rec.pair_histogram().counts == histogram_pairs(batch.pairs, cfg).counts);
    CHECK(rec.accidentals().raw.counts == acc.raw.counts);
    CHECK(rec.accidentals().scale == acc.scale);
    CHECK(rec.singles().values() == singles_image(events, cfg).values());
    CHECK(rec.image(CentroidMode::AverageOverXi, true).values ==
          centroid_image(batch.pairs, &acc, CentroidMode::AverageOverXi, cfg, 1).values);
    CHECK(rec.n_events() == events.size());
    CHECK(rec.pairs().size() == batch.pairs.size());
  }

  TEST_CASE("joint correlation histogram is symmetric") {
    DetectorConfig cfg;
    const std::vector<CoincidencePair> pairs = {{0, 1, 0, 4, 0, 1, 1}, {0, 3, 0, 3, 5, 1, 1}};
    const auto j = joint_correlation_histogram(pairs, Axis::X, cfg);
    CHECK(j.size() == 32 * 32);
    CHECK(j[1 * 32 + 4] == 1.0);
    CHECK(j[4 * 32 + 1] == 1.0);
    CHECK(j[3 * 32 + 3] == 2.0);
  }

  TEST_CASE("singles image sits on pixel centres") {
    DetectorConfig cfg;
    const std::vector<PhotonEvent> events = {ev(0, 3, 4, 0), ev(1, 3, 4, 0)};
    const auto s = singles_image(events, cfg);
    CHECK(s(3, 4).real() == 2.0);
    CHECK(s.x(3) == doctest::Approx(cfg.pixel_center_x(3)));
  }
}
