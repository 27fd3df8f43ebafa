#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "tempoclust/corpus.hpp"
#include "tempoclust/synth.hpp"

using namespace tempoclust;

namespace {

SynthSpec two_cluster_spec() {
  SynthSpec spec;
  spec.movement_id = "mov";
  spec.sonata_label = "Op. 9";
  spec.movement_name = "Allegro";
  spec.character = Character::fast;
  spec.clusters = {
      {"slow", 2, 60.0, 0.0, 1940, 2000, 0.0},
      {"fast", 3, 90.0, 0.0, 1930, 2010, 0.0},
  };
  spec.bars_per_recording = 4;
  return spec;
}

std::vector<const Recording*> sorted_recordings(const Corpus& corpus) {
  std::vector<const Recording*> out;
  for (const auto& [id, rec] : corpus.recordings) out.push_back(&rec);
  return out;  // map iteration is already id-sorted
}

}  // namespace

TEST_CASE("synthesis produces the requested counts and ids") {
  const Corpus corpus = synth_corpus(two_cluster_spec());
  REQUIRE(corpus.movements.size() == 1);
  REQUIRE(corpus.recordings.size() == 5);
  const Movement& movement = corpus.movements.at("mov");
  CHECK(movement.sonata_label == "Op. 9");
  CHECK(movement.movement_name == "Allegro");
  CHECK(movement.character == Character::fast);
  CHECK(corpus.recordings.count("mov-01") == 1);
  CHECK(corpus.recordings.count("mov-05") == 1);
  for (const Recording* rec : sorted_recordings(corpus)) {
    CHECK(rec->movement_id == "mov");
    CHECK(rec->bar_bpm.size() == 4);
  }
  CHECK(corpus.recordings.at("mov-03").performer == "performer_03");
}

TEST_CASE("sonata_label falls back to the movement_id") {
  SynthSpec spec = two_cluster_spec();
  spec.sonata_label.clear();
  const Corpus corpus = synth_corpus(spec);
  CHECK(corpus.movements.at("mov").sonata_label == "mov");
}

TEST_CASE("recording years are evenly spaced over the cluster window") {
  SynthSpec spec = two_cluster_spec();
  spec.clusters = {{"fast", 3, 90.0, 0.0, 1930, 2010, 0.0}};
  const Corpus corpus = synth_corpus(spec);
  std::vector<int> years;
  for (const Recording* rec : sorted_recordings(corpus)) years.push_back(rec->year);
  CHECK(years == std::vector<int>{1930, 1970, 2010});

  // A lone recording sits at the window midpoint.
  spec.clusters = {{"fast", 1, 90.0, 0.0, 1950, 1960, 0.0}};
  const Corpus single = synth_corpus(spec);
  CHECK(single.recordings.at("mov-01").year == 1955);
}

TEST_CASE("noiseless synthesis reproduces the drift line exactly") {
  SynthSpec spec = two_cluster_spec();
  spec.clusters = {{"fast", 3, 100.0, 0.0, 1940, 2000, 0.5}};
  const Corpus corpus = synth_corpus(spec);
  // Midpoint 1970; years 1940, 1970, 2000 give 85, 100, 115 BPM.
  const std::vector<double> expected = {85.0, 100.0, 115.0};
  const auto recs = sorted_recordings(corpus);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    for (double bpm : recs[i]->bar_bpm) {
      CHECK(bpm == doctest::Approx(expected[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("recording means and bar values are floored at 1 BPM") {
  SynthSpec spec = two_cluster_spec();
  // Steep negative drift pushes the late recordings far below zero.
  spec.clusters = {{"fast", 3, 2.0, 0.0, 1940, 2000, -1.0}};
  const Corpus corpus = synth_corpus(spec);
  const auto recs = sorted_recordings(corpus);
  // Year 2000 recording would sit at 2 - 30 = -28 BPM without the floor.
  for (double bpm : recs.back()->bar_bpm) CHECK(bpm == 1.0);
  for (const Recording* rec : recs) {
    for (double bpm : rec->bar_bpm) CHECK(bpm >= 1.0);
  }
}

TEST_CASE("synthesis is byte-reproducible and seed-sensitive") {
  SynthSpec spec = two_cluster_spec();
  spec.clusters[0].sd_bpm = 3.0;
  spec.bar_noise_sd = 1.0;
  spec.seed = 99;
  const CorpusText a = corpus_to_csv(synth_corpus(spec));
  const CorpusText b = corpus_to_csv(synth_corpus(spec));
  CHECK(a.movements_csv == b.movements_csv);
  CHECK(a.recordings_csv == b.recordings_csv);
  CHECK(a.bars_csv == b.bars_csv);

  spec.seed = 100;
  const CorpusText c = corpus_to_csv(synth_corpus(spec));
  CHECK(a.bars_csv != c.bars_csv);
}

TEST_CASE("noisy output parses back as a valid corpus") {
  SynthSpec spec = two_cluster_spec();
  spec.clusters[1].sd_bpm = 4.0;
  spec.bar_noise_sd = 2.0;
  const CorpusText csv = corpus_to_csv(synth_corpus(spec));
  const Corpus round =
      parse_corpus(csv.movements_csv, csv.recordings_csv, csv.bars_csv);
  CHECK(round.recordings.size() == 5);
}

TEST_CASE("per-movement streams keep earlier movements stable") {
  // Appending a second movement must not disturb the first one's draws.
  SynthSpec first = two_cluster_spec();
  first.clusters[0].sd_bpm = 2.0;
  SynthSpec second = two_cluster_spec();
  second.movement_id = "other";
  second.clusters[0].sd_bpm = 2.0;
  second.seed = 7;

  const Corpus alone = synth_corpus(first);
  const Corpus both = synth_corpus(std::vector<SynthSpec>{first, second});
  for (const auto& [id, rec] : alone.recordings) {
    CHECK(both.recordings.at(id).bar_bpm == rec.bar_bpm);
  }
}

TEST_CASE("invalid specs are rejected") {
  SynthSpec spec = two_cluster_spec();
  spec.clusters = {{"fast", 0, 90.0, 0.0, 1930, 2010, 0.0}};
  CHECK_THROWS_WITH_AS(synth_corpus(spec),
                       doctest::Contains("generates no recordings"), DomainError);

  spec = two_cluster_spec();
  spec.bar_noise_sd = -0.5;
  CHECK_THROWS_WITH_AS(synth_corpus(spec),
                       doctest::Contains("bar_noise_sd must be >= 0"), DomainError);

  spec = two_cluster_spec();
  spec.feature_spec = FeatureSpecKind::mean_and_cv;  // character stays fast
  CHECK_THROWS_WITH_AS(synth_corpus(spec),
                       doctest::Contains("requires character slow"), DomainError);

  spec = two_cluster_spec();
  spec.clusters[0].year_min = 2001;
  spec.clusters[0].year_max = 1999;
  CHECK_THROWS_WITH_AS(synth_corpus(spec),
                       doctest::Contains("year window is inverted"), DomainError);

  CHECK_THROWS_WITH_AS(
      synth_corpus(std::vector<SynthSpec>{two_cluster_spec(), two_cluster_spec()}),
      doctest::Contains("duplicate movement_id"), DomainError);
}

TEST_CASE("table rows translate ranges into spreads") {
  const std::vector<TableRow> rows = {
      {"slow", 3, 78.0, true, 75.0, 82.0},
      {"mid", 13, 83.1, true, 80.0, 86.0},
      {"fast", 4, 90.2, true, 88.0, 92.0},
  };
  const SynthSpec spec = spec_from_table_rows("op5n1_rondo", rows);
  REQUIRE(spec.clusters.size() == 3);
  CHECK(spec.clusters[0].sd_bpm == doctest::Approx(7.0 / 4.0));
  CHECK(spec.clusters[1].sd_bpm == doctest::Approx(6.0 / 4.0));
  CHECK(spec.clusters[2].sd_bpm == doctest::Approx(1.0));
  CHECK(spec.clusters[1].n == 13);
  CHECK(spec.clusters[1].mean_bpm == 83.1);

  SynthSpec full = spec;
  full.character = Character::fast;
  const Corpus corpus = synth_corpus(full);
  CHECK(corpus.recordings.size() == 20);
}

TEST_CASE("table rows without a published range get zero spread") {
  const std::vector<TableRow> rows = {
      {"mid", 14, 56.6, true, 53.0, 60.0},
      {"fast", 1, 65.7, false, 0.0, 0.0},
  };
  const SynthSpec spec = spec_from_table_rows("m", rows);
  REQUIRE(spec.clusters.size() == 2);
  CHECK(spec.clusters[1].sd_bpm == 0.0);
}

TEST_CASE("empty table rows are dropped") {
  const std::vector<TableRow> rows = {
      {"mid", 14, 66.5, true, 61.0, 71.0},
      {"fast", 5, 76.7, true, 73.0, 81.0},
      {"slow", 0, 0.0, false, 0.0, 0.0},
  };
  const SynthSpec spec = spec_from_table_rows("m", rows);
  CHECK(spec.clusters.size() == 2);
}

TEST_CASE("inverted table ranges are rejected") {
  const std::vector<TableRow> rows = {{"mid", 4, 60.0, true, 70.0, 50.0}};
  CHECK_THROWS_WITH_AS(spec_from_table_rows("m", rows),
                       doctest::Contains("inverted range"), DomainError);
  CHECK_THROWS_AS(spec_from_table_rows("m", rows, 0.0), DomainError);
}

TEST_CASE("a json spec file holds one movement or a list") {
  const std::string single = R"({
    "movement_id": "m1",
    "character": "fast",
    "clusters": [{"n": 2, "mean_bpm": 80.0}]
  })";
  const std::vector<SynthSpec> one = load_synth_specs_json(single);
  REQUIRE(one.size() == 1);
  CHECK(one[0].movement_id == "m1");
  CHECK(one[0].character == Character::fast);
  REQUIRE(one[0].clusters.size() == 1);
  CHECK(one[0].clusters[0].n == 2);
  CHECK(one[0].clusters[0].mean_bpm == 80.0);
  // Unstated knobs keep their defaults.
  CHECK(one[0].bars_per_recording == 24);
  CHECK(one[0].seed == 0);

  const std::string list = R"({"movements": [
    {"movement_id": "a", "clusters": [{"n": 1, "mean_bpm": 50.0}]},
    {"movement_id": "b", "seed": 12,
     "clusters": [{"n": 3, "mean_bpm": 70.0, "sd_bpm": 2.0,
                   "year_min": 1950, "year_max": 1990,
                   "slope_bpm_per_year": -0.1, "label_hint": "mid"}]}
  ]})";
  const std::vector<SynthSpec> two = load_synth_specs_json(list);
  REQUIRE(two.size() == 2);
  CHECK(two[1].seed == 12);
  CHECK(two[1].clusters[0].year_min == 1950);
  CHECK(two[1].clusters[0].slope_bpm_per_year == -0.1);
  CHECK(two[1].clusters[0].label_hint == "mid");
}

TEST_CASE("json spec errors name the offending path") {
  CHECK_THROWS_WITH_AS(load_synth_specs_json("{nope"),
                       doctest::Contains("synth spec:"), ParseError);
  CHECK_THROWS_WITH_AS(
      load_synth_specs_json(R"({"movement_id": "m", "clusters": []})"),
      doctest::Contains("/clusters"), ParseError);
  CHECK_THROWS_WITH_AS(
      load_synth_specs_json(R"({"character": "fast",
                                "clusters": [{"n": 1, "mean_bpm": 50.0}]})"),
      doctest::Contains("missing field 'movement_id'"), ParseError);
  CHECK_THROWS_WITH_AS(
      load_synth_specs_json(
          R"({"movement_id": "m",
              "clusters": [{"n": 1, "mean_bpm": 50.0}, {"n": 2}]})"),
      doctest::Contains("/clusters/1"), ParseError);
  CHECK_THROWS_WITH_AS(
      load_synth_specs_json(
          R"({"movements": [{"movement_id": "m",
                             "clusters": [{"n": 1, "mean_bpm": 50.0,
                                           "sd_bpm": -1.0}]}]})"),
      doctest::Contains("/movements/0/clusters/0/sd_bpm"), ParseError);
  CHECK_THROWS_WITH_AS(
      load_synth_specs_json(R"({"movement_id": "m", "typo": 1,
                                "clusters": [{"n": 1, "mean_bpm": 50.0}]})"),
      doctest::Contains("/typo: unknown field"), ParseError);
  CHECK_THROWS_WITH_AS(
      load_synth_specs_json(R"({"movement_id": "m", "character": "brisk",
                                "clusters": [{"n": 1, "mean_bpm": 50.0}]})"),
      doctest::Contains("/character"), ParseError);
  CHECK_THROWS_WITH_AS(load_synth_specs_json(R"({"movements": []})"),
                       doctest::Contains("/movements"), ParseError);
}
