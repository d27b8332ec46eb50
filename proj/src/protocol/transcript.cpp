#include "protocol/transcript.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace dbsim::protocol {

namespace {

char basis_tag(core::Basis b) { return b == core::Basis::Computational ? 'C' : 'F'; }

core::Basis parse_basis(const std::string &tag) {
  if (tag == "C")
    return core::Basis::Computational;
  if (tag == "F")
    return core::Basis::Fourier;
  throw Error(ErrorCode::Io, "transcript", "unknown basis tag '" + tag + "'");
}

[[noreturn]] void malformed(const std::string &detail) {
  throw Error(ErrorCode::Io, "transcript", "malformed transcript: " + detail);
}

} // namespace

void write_transcript(std::ostream &os, const Transcript &t) {
  os << "dbsim-transcript v1\n";
  os << "dimension " << t.dimension << " slots " << t.slots.size() << " pairs "
     << t.announcement.pairs.size() << "\n";
  for (const auto &[a, b] : t.announcement.pairs)
    os << "pair " << a << " " << b << "\n";
  for (std::size_t i = 0; i < t.slots.size(); ++i) {
    const auto &sym = t.slots[i];
    const auto &ev = t.outcomes[i];
    os << "slot " << i << " basis " << basis_tag(sym.basis) << " letter "
       << sym.letter << " bob " << basis_tag(ev.basis_used) << " clicks ";
    for (auto bit : ev.clicks_bitvector(t.dimension))
      os << static_cast<int>(bit);
    os << "\n";
  }
}

Transcript read_transcript(std::istream &is) {
  std::string line;
  if (!std::getline(is, line) || line != "dbsim-transcript v1")
    malformed("missing version header");

  Transcript t;
  std::size_t n_slots = 0, n_pairs = 0;
  {
    std::string key1, key2, key3;
    std::istringstream hs([&] {
      std::string h;
      if (!std::getline(is, h))
        malformed("missing size header");
      return h;
    }());
    if (!(hs >> key1 >> t.dimension >> key2 >> n_slots >> key3 >> n_pairs) ||
        key1 != "dimension" || key2 != "slots" || key3 != "pairs")
      malformed("bad size header");
  }

  for (std::size_t i = 0; i < n_pairs; ++i) {
    if (!std::getline(is, line))
      malformed("truncated pair list");
    std::istringstream ls(line);
    std::string key;
    std::uint32_t a = 0, b = 0;
    if (!(ls >> key >> a >> b) || key != "pair")
      malformed("bad pair line");
    t.announcement.pairs.emplace_back(a, b);
  }

  t.slots.resize(n_slots);
  t.outcomes.resize(n_slots);
  for (std::size_t i = 0; i < n_slots; ++i) {
    if (!std::getline(is, line))
      malformed("truncated slot list");
    std::istringstream ls(line);
    std::string key, kb, kl, kbob, kc, alice_basis, bob_basis, bits;
    std::size_t index = 0;
    int letter = 0;
    if (!(ls >> key >> index >> kb >> alice_basis >> kl >> letter >> kbob >>
          bob_basis >> kc >> bits) ||
        key != "slot" || kb != "basis" || kl != "letter" || kbob != "bob" ||
        kc != "clicks" || index >= n_slots)
      malformed("bad slot line");
    if (bits.size() != static_cast<std::size_t>(t.dimension))
      malformed("click vector length != dimension");
    t.slots[index] = core::QuditSymbol{letter, parse_basis(alice_basis)};
    channel::DetectionEvent ev;
    ev.basis_used = parse_basis(bob_basis);
    for (std::size_t d = 0; d < bits.size(); ++d) {
      if (bits[d] == '1')
        ev.clicks.push_back(static_cast<std::uint16_t>(d));
      else if (bits[d] != '0')
        malformed("click vector must be 0/1");
    }
    if (ev.clicks.size() == 1)
      ev.resolved = ev.clicks.front();
    t.outcomes[index] = ev;
  }
  return t;
}

} // namespace dbsim::protocol
