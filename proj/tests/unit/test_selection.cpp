#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "ibsumm/error.hpp"
#include "ibsumm/selection.hpp"

using namespace ibsumm;

namespace {

const char* kTable =
    "alpha 1 0 0\n"
    "beta 0 1 0\n"
    "gamma 0 0 1\n"
    "delta 1 1 0\n"
    "minus -1 0 0\n";

std::vector<Keyphrase> phrases(std::initializer_list<std::string> texts) {
  std::vector<Keyphrase> out;
  for (const auto& t : texts) out.push_back({tokenize(t), 1.0});
  return out;
}

ScoredSentence scored(std::size_t index, double total) {
  return {make_sentence(index, "s" + std::to_string(index)), {}, total};
}

std::vector<std::size_t> member_indices(const CandidateSet& c) {
  std::vector<std::size_t> out;
  for (const auto& m : c.members) out.push_back(m.sentence.index);
  return out;
}

class FixedClassifier final : public CategoryClassifier {
 public:
  FixedClassifier(std::vector<std::string> labels, std::vector<std::vector<double>> rows)
      : labels_(std::move(labels)), rows_(std::move(rows)) {}
  std::vector<std::vector<double>> classify(std::span<const std::string> texts) const override {
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < texts.size(); ++i) out.push_back(rows_[i % rows_.size()]);
    return out;
  }
  const std::vector<std::string>& labels() const override { return labels_; }

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<double>> rows_;
};

}  // namespace

TEST_SUITE("selection") {
  TEST_CASE("p log p term") {
    CHECK(plogp_term(1.0, 0.01) == 0.0);
    CHECK(plogp_term(-0.2, 0.01) == doctest::Approx(0.01 * std::log(0.01)));
    CHECK(plogp_term(1.0 / std::exp(1.0), 0.01) == doctest::Approx(-1.0 / std::exp(1.0)));
    // Never positive, and zero only at p = 1.
    for (double p = 0.0; p <= 1.0; p += 0.03125) {
      CHECK(plogp_term(p, 0.01) <= 0.0);
      if (p < 1.0) CHECK(plogp_term(p, 0.01) < 0.0);
    }
  }

  TEST_CASE("keyword view") {
    const EmbeddingVector s{{1, 0, 0}};
    {
      const std::vector<EmbeddingVector> y{{{1, 0, 0}}};
      const auto v = keyword_view(s, y, 0.01);
      CHECK(v.p == 1.0);
      CHECK(v.contribution == 0.0);
    }
    {
      const std::vector<EmbeddingVector> y{{{-1, 0.0, 4.898979485566356}}};  // cosine -0.2
      const auto v = keyword_view(s, y, 0.01);
      CHECK(v.p == doctest::Approx(0.01));
      CHECK(v.contribution == doctest::Approx(-0.04605170185988091));
    }
    {
      // Two keyphrases at cosine 0.5 each.
      const double r = std::sqrt(3.0);
      const std::vector<EmbeddingVector> y{{{1, r, 0}}, {{1, 0, r}}};
      const auto v = keyword_view(s, y, 0.01);
      CHECK(v.contribution == doctest::Approx(2 * 0.5 * std::log(0.5)));
      CHECK(v.contribution == doctest::Approx(-0.6931).epsilon(1e-4));
      CHECK(v.similarity == doctest::Approx(1.0));
      CHECK(v.p == doctest::Approx(0.5));
    }
    CHECK_THROWS_AS(keyword_view(s, {}, 0.01), ContractViolation);
  }

  TEST_CASE("category view") {
    const std::vector<std::string> labels{"cs", "math"};
    const std::vector<double> sure{1.0, 0.0};
    CHECK(category_view(sure, labels, "cs", 0.01).contribution == 0.0);

    const double inv_e = 1.0 / std::exp(1.0);
    const std::vector<double> mid{inv_e, 1.0 - inv_e};
    CHECK(category_view(mid, labels, "cs", 0.01).contribution == doctest::Approx(-0.36787944117144233));
    CHECK(category_view(mid, labels, std::nullopt, 0.01).p == doctest::Approx(1.0 - inv_e));

    std::vector<std::string> many;
    for (int i = 0; i < 100; ++i) many.push_back("c" + std::to_string(i));
    const std::vector<double> uniform(100, 0.01);
    const auto u = category_view(uniform, many, "c42", 0.01);
    CHECK(u.p == doctest::Approx(0.01));
    CHECK(u.contribution == doctest::Approx(0.01 * std::log(0.01)));

    CHECK_THROWS_AS(category_view(sure, labels, "bio", 0.01), ConfigError);
    const std::vector<double> bad{0.7, 0.7};
    CHECK_THROWS_AS(category_view(bad, labels, "cs", 0.01), ContractViolation);
    const std::vector<double> short_dist{1.0};
    CHECK_THROWS_AS(category_view(short_dist, labels, "cs", 0.01), ContractViolation);
  }

  TEST_CASE("a sentence identical to the only keyphrase has the unique maximum 0") {
    const auto e = testing::embedder(kTable);
    const auto sents = testing::sentences({"beta gamma", "alpha", "delta", "minus"});
    const auto kp = phrases({"alpha"});
    const auto s = score_sentences(sents, kp, e, nullptr, {});
    REQUIRE(s.size() == 4);
    CHECK(s[1].total == 0.0);
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i != 1) CHECK(s[i].total < 0.0);
    }
  }

  TEST_CASE("alpha = 0 leaves only the keyword term") {
    const auto e = testing::embedder(kTable);
    const auto sents = testing::sentences({"alpha beta", "gamma", "delta alpha"});
    const auto kp = phrases({"alpha", "beta gamma"});
    const FixedClassifier cls({"cs", "math"}, {{0.3, 0.7}, {0.9, 0.1}});
    const CategorySignal cat{&cls, std::string("cs")};
    const auto single = score_sentences(sents, kp, e, nullptr, {0.0, 1.0});
    const auto multi = score_sentences(sents, kp, e, &cat, {0.0, 1.0});
    for (std::size_t i = 0; i < sents.size(); ++i) CHECK(multi[i].total == single[i].total);
    CHECK(multi[0].view_scores.size() == 2);
  }

  TEST_CASE("totals are linear in the weights and rankings are scale invariant") {
    const auto e = testing::embedder(kTable);
    const auto sents = testing::sentences({"alpha beta", "gamma", "delta alpha", "minus beta", "beta"});
    const auto kp = phrases({"alpha", "beta gamma"});
    const FixedClassifier cls({"cs", "math"}, {{0.3, 0.7}, {0.9, 0.1}, {0.5, 0.5}});
    const CategorySignal cat{&cls, std::string("math")};

    const auto b1 = score_sentences(sents, kp, e, nullptr, {0.0, 1.0});
    const auto b2 = score_sentences(sents, kp, e, nullptr, {0.0, 2.0});
    for (std::size_t i = 0; i < sents.size(); ++i) CHECK(b2[i].total == doctest::Approx(2 * b1[i].total));
    CHECK(member_indices(select_top_n(b1, 3)) == member_indices(select_top_n(b2, 3)));

    for (double c : {0.5, 3.0, 17.0}) {
      const auto base = score_sentences(sents, kp, e, &cat, {0.7, 1.3});
      const auto scaled = score_sentences(sents, kp, e, &cat, {0.7 * c, 1.3 * c});
      for (std::size_t n = 1; n <= sents.size(); ++n) {
        CHECK(member_indices(select_top_n(base, n)) == member_indices(select_top_n(scaled, n)));
      }
    }
  }

  TEST_CASE("similarity-sum ranking uses clamped cosines") {
    const auto e = testing::embedder(kTable);
    const auto sents = testing::sentences({"alpha", "minus"});
    const auto kp = phrases({"alpha", "beta"});
    const auto s = score_sentences(sents, kp, e, nullptr, {0.0, 1.0, 0.01, RankingMode::similarity_sum});
    CHECK(s[0].total == doctest::Approx(1.0 + 0.01));
    CHECK(s[1].total == doctest::Approx(0.01 + 0.01));
  }

  TEST_CASE("no keyphrases skips the keyword view with a warning") {
    const auto e = testing::embedder(kTable);
    const auto sents = testing::sentences({"alpha", "beta"});
    std::vector<std::string> warnings;
    const auto s = score_sentences(sents, {}, e, nullptr, {}, &warnings);
    REQUIRE(s.size() == 2);
    CHECK(s[0].view_scores.empty());
    CHECK(s[0].total == 0.0);
    CHECK(warnings.size() == 1);
  }

  TEST_CASE("scoring is deterministic") {
    const auto e = testing::embedder(kTable);
    const auto sents = testing::sentences({"alpha beta", "gamma delta", "minus"});
    const auto kp = phrases({"alpha", "gamma"});
    const auto a = score_sentences(sents, kp, e, nullptr, {});
    const auto b = score_sentences(sents, kp, e, nullptr, {});
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].total == b[i].total);
  }

  TEST_CASE("select_top_n keeps the best and re-sorts by position") {
    const std::vector<ScoredSentence> s{scored(0, -0.1), scored(1, -0.5), scored(2, -0.2)};
    const auto c = select_top_n(s, 2);
    CHECK(member_indices(c) == std::vector<std::size_t>{0, 2});
    CHECK(c.n_requested == 2);
    CHECK(select_top_n(s, 50).members.size() == 3);
  }

  TEST_CASE("select_top_n breaks ties toward the smaller index") {
    const std::vector<ScoredSentence> s{scored(1, -0.1), scored(4, -0.3), scored(9, -0.3)};
    CHECK(member_indices(select_top_n(s, 2)) == std::vector<std::size_t>{1, 4});
  }
}
