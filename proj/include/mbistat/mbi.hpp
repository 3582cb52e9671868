#pragma once

#include <string>
#include <vector>

namespace mbistat::mbi {

// Ordered |d| thresholds and the qualitative label of each band.
// Defaults follow the conventional magnitude scale for standardized effects.
struct MagnitudeScale {
  std::vector<double> thresholds = {0.2, 0.6, 1.2, 2.0};
  std::vector<std::string> labels = {"trivial", "small", "moderate", "large",
                                     "very large"};
  void validate() const; // strictly increasing positive thresholds, labels = thresholds + 1
};

// Smallest worthwhile change, in standardized units unless the caller
// converts explicitly via a standardizer.
struct Swc {
  double value = 0.20;
  void validate() const;
};

// Chance-to-word ladder. boundaries are lower-inclusive; words has one more
// entry than boundaries. The top rung starts at 0.985 so that a chance
// reported as 99% grades as "almost certainly"; the 0.995 convention is a
// configuration away.
struct DescriptorLadder {
  std::vector<double> boundaries = {0.005, 0.05, 0.25, 0.75, 0.95, 0.985};
  std::vector<std::string> words = {"most unlikely", "very unlikely",
                                    "unlikely",      "possibly",
                                    "likely",        "very likely",
                                    "almost certainly"};
  void validate() const;
  const std::string& word_for(double chance) const;
};

struct ChanceTriplet {
  double negative = 0.0;
  double trivial = 1.0;
  double positive = 0.0;
  double sum() const { return negative + trivial + positive; }
};

enum class Direction { negative, trivial, positive, unclear };

const char* direction_name(Direction d); // "negative" | "trivial" | "positive" | "unclear"

// Both-tails rule: the verdict is withheld when the chances of benefit and
// of harm each exceed their threshold.
struct UnclearThresholds {
  double positive = 0.05;
  double negative = 0.05;
};

struct MbiInference {
  ChanceTriplet chances;
  std::string descriptor;
  Direction direction = Direction::unclear;
  std::string magnitude_label;
};

// Band label for |d| under the scale; lower bounds inclusive, so the default
// scale maps d = 0.2 to "small" and d = 2.0 to "very large".
const std::string& classify_magnitude(double d, const MagnitudeScale& scale);

// Chances that the true effect lies below -swc, within (-swc, +swc), or
// above +swc, from a t distribution centred on the observed effect.
ChanceTriplet mbi_chances(double effect, double se, double df, const Swc& swc);

enum class Locale { en, pt };

// Dominant-direction verdict with the unclear rule applied first.
Direction mechanistic_inference(const ChanceTriplet& chances,
                                const UnclearThresholds& thresholds = {});

struct QualitativeLabel {
  std::string descriptor; // e.g. "almost certainly positive", or "unclear"
  Direction direction = Direction::unclear;
};

// Words for a chance triplet. Triplets whose sum strays from 1 by rounding
// (the source material reports 0.01%/1%/99%) are normalized first.
QualitativeLabel qualitative_label(const ChanceTriplet& chances,
                                   const DescriptorLadder& ladder = {},
                                   const UnclearThresholds& thresholds = {},
                                   Locale locale = Locale::en);

// Full inference for one comparison: chances + words + magnitude band.
MbiInference infer(double effect, double se, double df, double effect_size,
                   const Swc& swc, const MagnitudeScale& scale = {},
                   const DescriptorLadder& ladder = {},
                   const UnclearThresholds& thresholds = {},
                   Locale locale = Locale::en);

} // namespace mbistat::mbi
