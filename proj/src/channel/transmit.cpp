#include "channel/transmit.hpp"

#include <algorithm>
#include <cmath>

namespace dbsim::channel {

TransmitContext::TransmitContext(const core::ChannelParams &params, bool force_loaded,
                                 std::vector<double> delocalized_pdf)
    : params_(core::validate_params(params)), force_loaded_(force_loaded),
      dark_p_(params.gate_dark_probability()) {
  if (params_.basis_count != 2)
    throw Error(ErrorCode::InvalidArgument, "basis_count",
                "the channel model implements exactly two conjugate bases");
  if (!delocalized_pdf.empty()) {
    if (static_cast<int>(delocalized_pdf.size()) != params_.dimension)
      throw Error(ErrorCode::LengthMismatch, "delocalized",
                  "delocalized distribution must have one weight per detector");
    delocalized_cdf_.resize(delocalized_pdf.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < delocalized_pdf.size(); ++i) {
      if (delocalized_pdf[i] < 0.0)
        throw_out_of_range("delocalized", "negative weight");
      acc += delocalized_pdf[i];
      delocalized_cdf_[i] = acc;
    }
    if (acc <= 0.0)
      throw_out_of_range("delocalized", "distribution sums to zero");
    for (auto &c : delocalized_cdf_)
      c /= acc;
    delocalized_cdf_.back() = 1.0;
  }
}

int TransmitContext::draw_photon_count(core::RandomSource &rng) const {
  return force_loaded_ ? 1 : rng.poisson(params_.mean_photon_number);
}

int TransmitContext::draw_delocalized(core::RandomSource &rng) const {
  if (delocalized_cdf_.empty())
    return static_cast<int>(rng.next_below(static_cast<std::uint32_t>(params_.dimension)));
  const double u = rng.next_unit();
  const auto it = std::lower_bound(delocalized_cdf_.begin(), delocalized_cdf_.end(), u);
  return static_cast<int>(it - delocalized_cdf_.begin());
}

void TransmitContext::add_dark_clicks(DetectionEvent &event, core::RandomSource &rng) const {
  if (dark_p_ <= 0.0)
    return;
  const int d = params_.dimension;
  // Each detector dark-fires independently: k distinct detectors out of D.
  // A dark count on a detector that already clicked is absorbed.
  const int k = rng.binomial(d, dark_p_);
  if (k == 0)
    return;
  std::vector<std::uint16_t> dark;
  dark.reserve(static_cast<std::size_t>(k));
  while (static_cast<int>(dark.size()) < k) {
    const std::uint16_t detector =
        static_cast<std::uint16_t>(rng.next_below(static_cast<std::uint32_t>(d)));
    if (std::find(dark.begin(), dark.end(), detector) != dark.end())
      continue;
    dark.push_back(detector);
    if (std::find(event.clicks.begin(), event.clicks.end(), detector) ==
        event.clicks.end())
      event.clicks.push_back(detector);
  }
}

DetectionEvent TransmitContext::transmit_pulse(const core::QuditSymbol &sent,
                                               core::Basis bob_basis,
                                               core::RandomSource &rng) const {
  DetectionEvent event;
  event.basis_used = bob_basis;

  const int n = draw_photon_count(rng);
  const bool delivered = n >= 1 && rng.bernoulli(params_.efficiency);

  std::uint16_t signal_letter = 0;
  bool have_signal = false;
  if (delivered) {
    // Matched bases keep the wave function localized on the sent letter;
    // mismatched bases delocalize it across the detector array.
    signal_letter = bob_basis == sent.basis
                        ? static_cast<std::uint16_t>(sent.letter)
                        : static_cast<std::uint16_t>(draw_delocalized(rng));
    event.clicks.push_back(signal_letter);
    have_signal = true;
  }

  add_dark_clicks(event, rng);

  if (event.clicks.size() == 1) {
    event.resolved = event.clicks.front();
    event.resolved_is_signal = have_signal && *event.resolved == signal_letter;
  }
  std::sort(event.clicks.begin(), event.clicks.end());
  return event;
}

} // namespace dbsim::channel
