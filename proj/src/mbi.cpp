#include "mbistat/mbi.hpp"

#include "mbistat/errors.hpp"
#include "mbistat/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mbistat::mbi {

namespace {

const char* kDirectionEn[4] = {"negative", "trivial", "positive", "unclear"};
const char* kDirectionPt[4] = {"Negativo", "Trivial", "Positivo", "Indefinido"};

const std::vector<std::string> kWordsPt = {
    "muitissimo improvavel", "muito improvavel", "improvavel", "possivelmente",
    "provavelmente",         "muito provavelmente", "quase certamente"};

ChanceTriplet normalized(const ChanceTriplet& c) {
  const double s = c.sum();
  if (!(s > 0.0))
    throw std::domain_error("chance triplet must have a positive sum");
  if (s == 1.0) return c;
  return ChanceTriplet{c.negative / s, c.trivial / s, c.positive / s};
}

} // namespace

void MagnitudeScale::validate() const {
  if (thresholds.empty())
    throw std::domain_error("magnitude scale needs at least one threshold");
  if (labels.size() != thresholds.size() + 1)
    throw std::domain_error("magnitude scale needs labels = thresholds + 1");
  double prev = 0.0;
  for (double t : thresholds) {
    if (!(t > prev))
      throw std::domain_error(
          "magnitude thresholds must be strictly increasing and positive");
    prev = t;
  }
}

void Swc::validate() const {
  if (!(value > 0.0)) throw std::domain_error("swc must be positive");
}

void DescriptorLadder::validate() const {
  if (words.size() != boundaries.size() + 1)
    throw std::domain_error("descriptor ladder needs words = boundaries + 1");
  double prev = 0.0;
  for (double b : boundaries) {
    if (!(b > prev && b < 1.0))
      throw std::domain_error(
          "descriptor boundaries must be strictly increasing within (0,1)");
    prev = b;
  }
}

const std::string& DescriptorLadder::word_for(double chance) const {
  validate();
  std::size_t rung = 0;
  while (rung < boundaries.size() && chance >= boundaries[rung]) ++rung;
  return words[rung];
}

const char* direction_name(Direction d) {
  return kDirectionEn[static_cast<int>(d)];
}

const std::string& classify_magnitude(double d, const MagnitudeScale& scale) {
  scale.validate();
  if (!std::isfinite(d)) return scale.labels.back();
  const double mag = std::fabs(d);
  std::size_t band = 0;
  while (band < scale.thresholds.size() && mag >= scale.thresholds[band])
    ++band;
  return scale.labels[band];
}

ChanceTriplet mbi_chances(double effect, double se, double df, const Swc& swc) {
  if (!(se > 0.0)) throw std::domain_error("mbi_chances requires se > 0");
  swc.validate();
  // Both chances through the same symmetric CDF expression, so reflecting
  // the effect swaps them bit-for-bit.
  ChanceTriplet c;
  c.positive = specfun::t_cdf((effect - swc.value) / se, df);
  c.negative = specfun::t_cdf((-swc.value - effect) / se, df);
  c.positive = std::clamp(c.positive, 0.0, 1.0);
  c.negative = std::clamp(c.negative, 0.0, 1.0);
  c.trivial = std::clamp(1.0 - c.positive - c.negative, 0.0, 1.0);
  return c;
}

Direction mechanistic_inference(const ChanceTriplet& chances,
                                const UnclearThresholds& thresholds) {
  const ChanceTriplet c = normalized(chances);
  if (c.positive > thresholds.positive && c.negative > thresholds.negative)
    return Direction::unclear;
  if (c.trivial >= c.positive && c.trivial >= c.negative)
    return Direction::trivial;
  return c.positive >= c.negative ? Direction::positive : Direction::negative;
}

QualitativeLabel qualitative_label(const ChanceTriplet& chances,
                                   const DescriptorLadder& ladder,
                                   const UnclearThresholds& thresholds,
                                   Locale locale) {
  ladder.validate();
  const ChanceTriplet c = normalized(chances);
  const Direction dir = mechanistic_inference(c, thresholds);

  QualitativeLabel out;
  out.direction = dir;
  if (dir == Direction::unclear) {
    out.descriptor = locale == Locale::pt ? kDirectionPt[3] : kDirectionEn[3];
    return out;
  }
  double chance = c.trivial;
  if (dir == Direction::positive) chance = c.positive;
  if (dir == Direction::negative) chance = c.negative;

  std::size_t rung = 0;
  while (rung < ladder.boundaries.size() && chance >= ladder.boundaries[rung])
    ++rung;
  const std::string& word =
      locale == Locale::pt && ladder.words.size() == kWordsPt.size()
          ? kWordsPt[rung]
          : ladder.words[rung];
  const char* dirword = locale == Locale::pt
                            ? kDirectionPt[static_cast<int>(dir)]
                            : kDirectionEn[static_cast<int>(dir)];
  out.descriptor = word + " " + dirword;
  return out;
}

MbiInference infer(double effect, double se, double df, double effect_size,
                   const Swc& swc, const MagnitudeScale& scale,
                   const DescriptorLadder& ladder,
                   const UnclearThresholds& thresholds, Locale locale) {
  MbiInference out;
  out.chances = mbi_chances(effect, se, df, swc);
  const QualitativeLabel label =
      qualitative_label(out.chances, ladder, thresholds, locale);
  out.descriptor = label.descriptor;
  out.direction = label.direction;
  out.magnitude_label = classify_magnitude(effect_size, scale);
  return out;
}

} // namespace mbistat::mbi
