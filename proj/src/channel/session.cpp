#include "channel/session.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "analytics/budgets.hpp"
#include "channel/transmit.hpp"
#include "core/random.hpp"
#include "protocol/encoding.hpp"
#include "protocol/scoring.hpp"
#include "protocol/sifting.hpp"

namespace dbsim::channel {

namespace {

constexpr std::uint64_t kBlockTwins = 65536;

unsigned worker_count(const RunOptions &options, std::uint64_t blocks) {
  unsigned n = options.threads != 0 ? options.threads
                                    : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::uint64_t>(n, blocks));
}

// Runs `fn(block_index, block_size)` over all blocks on a small pool and
// merges the per-block tallies in block order.
template <typename Tally, typename Fn>
Tally run_blocks(std::uint64_t total, const RunOptions &options, Fn fn) {
  const std::uint64_t blocks = (total + kBlockTwins - 1) / kBlockTwins;
  std::vector<Tally> partial(static_cast<std::size_t>(blocks));
  const unsigned workers = worker_count(options, blocks);

  std::atomic<std::uint64_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::uint64_t b = next.fetch_add(1);
      if (b >= blocks)
        return;
      const std::uint64_t begin = b * kBlockTwins;
      const std::uint64_t size = std::min(kBlockTwins, total - begin);
      partial[static_cast<std::size_t>(b)] = fn(b, size);
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i)
      pool.emplace_back(worker);
    for (auto &t : pool)
      t.join();
  }

  Tally merged;
  for (const auto &p : partial)
    merged.merge(p);
  return merged;
}

} // namespace

SessionTally run_dbs_session(std::uint64_t twins, const core::ChannelParams &params,
                             const RunOptions &options) {
  const core::ChannelParams p = core::validate_params(params);
  const TransmitContext ctx(p, options.force_single_photon, options.delocalized_pdf);

  return run_blocks<SessionTally>(twins, options, [&](std::uint64_t block,
                                                      std::uint64_t size) {
    core::RandomSource rng(options.seed, block);

    std::vector<int> letters(static_cast<std::size_t>(size));
    for (auto &l : letters)
      l = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(p.dimension)));

    const protocol::EncodedMessage msg = protocol::encode_message(letters, p, rng);

    std::vector<DetectionEvent> outcomes;
    outcomes.reserve(msg.slots.size());
    for (const auto &symbol : msg.slots) {
      // Bob picks a basis per slot; he cannot know which slots pair up.
      const core::Basis bob = rng.next_below(2) == 0 ? core::Basis::Computational
                                                     : core::Basis::Fourier;
      outcomes.push_back(ctx.transmit_pulse(symbol, bob, rng));
    }

    const protocol::SiftResult sifted =
        protocol::sift(outcomes, msg.announcement, msg.slots, p);
    return protocol::score_session(sifted.verdicts);
  });
}

SessionTally run_ipbe_session(std::uint64_t slots, const core::ChannelParams &params,
                              const RunOptions &options) {
  const core::ChannelParams p = core::validate_params(params);
  const TransmitContext ctx(p, options.force_single_photon, options.delocalized_pdf);

  return run_blocks<SessionTally>(slots, options, [&](std::uint64_t block,
                                                      std::uint64_t size) {
    core::RandomSource rng(options.seed, block);
    SessionTally t;
    t.twin_count = size;
    for (std::uint64_t i = 0; i < size; ++i) {
      const int letter = static_cast<int>(
          rng.next_below(static_cast<std::uint32_t>(p.dimension)));
      const core::Basis alice = rng.next_below(2) == 0 ? core::Basis::Computational
                                                       : core::Basis::Fourier;
      const core::Basis bob = rng.next_below(2) == 0 ? core::Basis::Computational
                                                     : core::Basis::Fourier;
      const DetectionEvent ev =
          ctx.transmit_pulse(core::QuditSymbol{letter, alice}, bob, rng);

      if (ev.resolved && !ev.resolved_is_signal) {
        // Noise-only read-out accepted as data: nothing ties it to a basis,
        // so the classical reveal cannot screen it out.
        ++t.empty_error;
      } else if (bob != alice) {
        ++t.discarded_mixed; // removed by the public basis announcement
      } else if (!ev.resolved) {
        ++t.lost;
      } else {
        ++t.correct; // matched basis keeps the photon on the sent letter
      }
    }
    return t;
  });
}

OscarTally run_oscar_pns(std::uint64_t twins, const core::ChannelParams &params,
                         const RunOptions &options) {
  const core::ChannelParams p = core::validate_params(params);
  if (p.mean_photon_number <= 0.0 && !options.force_single_photon)
    throw Error(ErrorCode::DegenerateDenominator, "mean_photon_number",
                "photon-number-splitting run needs lambda > 0");
  const TransmitContext ctx(p, options.force_single_photon);
  const double survive = 1.0 - analytics::p_gamma(p);

  return run_blocks<OscarTally>(twins, options, [&](std::uint64_t block,
                                                    std::uint64_t size) {
    core::RandomSource rng(options.seed, block);
    OscarTally t;
    t.twin_count = size;
    for (std::uint64_t i = 0; i < size; ++i) {
      const core::Basis alice = rng.next_below(2) == 0 ? core::Basis::Computational
                                                       : core::Basis::Fourier;
      const int n1 = ctx.draw_photon_count(rng);
      const int n2 = ctx.draw_photon_count(rng);
      if (n1 < 1 || n2 < 1)
        continue;
      ++t.both_loaded;

      // Bob: each half must arrive, stay dark-free, and be measured in
      // Alice's basis (independent per-slot choice).
      bool bob_ok = true;
      for (int half = 0; half < 2; ++half) {
        const core::Basis bob = rng.next_below(2) == 0 ? core::Basis::Computational
                                                       : core::Basis::Fourier;
        bob_ok = bob_ok && bob == alice && rng.bernoulli(p.efficiency) &&
                 rng.bernoulli(survive);
      }
      if (bob_ok)
        ++t.bob_success;

      // Oscar: skims one photon from each multi-photon pulse, stores it
      // losslessly, and pairs the halves after the public announcement. He
      // still has to guess which of the two bases Alice used.
      if (n1 >= 2 && n2 >= 2) {
        ++t.intercepted_multi;
        if (rng.next_below(2) == 0)
          ++t.extracted_pairs;
      }
    }
    return t;
  });
}

} // namespace dbsim::channel
