#include "protocol/encoding.hpp"

#include <numeric>

namespace dbsim::protocol {

EncodedMessage encode_message(const std::vector<int> &letters,
                              const core::ChannelParams &params,
                              core::RandomSource &rng) {
  if (params.basis_count != 2)
    throw Error(ErrorCode::InvalidArgument, "basis_count",
                "twin encoding implements exactly two conjugate bases");
  for (int letter : letters)
    if (letter < 0 || letter >= params.dimension)
      throw_out_of_range("letter", "message letter outside [0, D)");

  const std::uint32_t n_slots = static_cast<std::uint32_t>(letters.size()) * 2;

  // Fisher-Yates over all slots; twin k occupies positions perm[2k], perm[2k+1].
  std::vector<std::uint32_t> perm(n_slots);
  std::iota(perm.begin(), perm.end(), 0u);
  for (std::uint32_t i = n_slots; i > 1; --i) {
    const std::uint32_t j = rng.next_below(i);
    std::swap(perm[i - 1], perm[j]);
  }

  EncodedMessage out;
  out.slots.resize(n_slots);
  out.twins.reserve(letters.size());
  out.announcement.pairs.reserve(letters.size());
  for (std::size_t k = 0; k < letters.size(); ++k) {
    const core::Basis basis = rng.next_below(2) == 0 ? core::Basis::Computational
                                                     : core::Basis::Fourier;
    const core::QuditSymbol symbol{letters[k], basis};
    const std::uint32_t a = perm[2 * k];
    const std::uint32_t b = perm[2 * k + 1];
    out.slots[a] = symbol;
    out.slots[b] = symbol;
    out.twins.push_back({symbol, a, b});
    out.announcement.pairs.emplace_back(a, b);
  }
  return out;
}

} // namespace dbsim::protocol
