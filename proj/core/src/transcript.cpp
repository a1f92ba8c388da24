#include "knapsack/transcript.hpp"

#include <stdexcept>

namespace knapsack {

const TranscriptEntry& TranscriptReader::advance(const char* expected_stage) {
  if (pos_ >= transcript_->entries().size())
    throw std::domain_error(std::string("transcript exhausted; expected stage ") +
                            expected_stage);
  const TranscriptEntry& e = transcript_->entries()[pos_++];
  if (e.stage != expected_stage)
    throw std::domain_error("transcript stage mismatch: expected " +
                            std::string(expected_stage) + ", found " + e.stage);
  return e;
}

double TranscriptReader::next_real(const char* expected_stage) {
  const TranscriptEntry& e = advance(expected_stage);
  if (!e.is_real())
    throw std::domain_error("transcript stage " + e.stage +
                            ": expected a real draw");
  return e.real();
}

std::int64_t TranscriptReader::next_int(const char* expected_stage) {
  const TranscriptEntry& e = advance(expected_stage);
  if (e.is_real())
    throw std::domain_error("transcript stage " + e.stage +
                            ": expected an integer draw");
  return e.integer();
}

}  // namespace knapsack
