#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace knapsack {

// Stage labels for the random draws the algorithms make. A transcript of
// labeled draws is enough to replay a run bit-for-bit, and gives couplings a
// stage-addressable handle on each draw.
namespace stage {
inline constexpr const char* greedy_W = "greedy_W";
inline constexpr const char* threshold_c = "threshold_c";
inline constexpr const char* exp_mech_t = "exp_mech_t";
inline constexpr const char* round_delta = "round_delta";
}  // namespace stage

struct TranscriptEntry {
  std::string stage;
  std::variant<double, std::int64_t> draw;

  bool is_real() const { return std::holds_alternative<double>(draw); }
  double real() const { return std::get<double>(draw); }
  std::int64_t integer() const { return std::get<std::int64_t>(draw); }

  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) =
      default;
};

class Transcript {
 public:
  void record(std::string stage_label, double draw) {
    entries_.push_back({std::move(stage_label), draw});
  }
  void record(std::string stage_label, std::int64_t draw) {
    entries_.push_back({std::move(stage_label), draw});
  }
  void append(const Transcript& other) {
    entries_.insert(entries_.end(), other.entries_.begin(),
                    other.entries_.end());
  }

  const std::vector<TranscriptEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  friend bool operator==(const Transcript&, const Transcript&) = default;

 private:
  std::vector<TranscriptEntry> entries_;
};

// Sequential reader used by the replay entry points; verifies stage labels.
class TranscriptReader {
 public:
  explicit TranscriptReader(const Transcript& transcript)
      : transcript_(&transcript) {}

  double next_real(const char* expected_stage);
  std::int64_t next_int(const char* expected_stage);
  bool exhausted() const { return pos_ == transcript_->entries().size(); }

 private:
  const TranscriptEntry& advance(const char* expected_stage);

  const Transcript* transcript_;
  std::size_t pos_ = 0;
};

}  // namespace knapsack
