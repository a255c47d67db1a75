#include "anonq/net/fabric.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace anonq::net {

Roster Roster::all_honest(int n) {
  Roster r;
  r.n = n;
  for (AgentId a = 1; a <= n; ++a) r.honest.push_back(a);
  r.validate();
  return r;
}

Roster Roster::with_honest(int n, std::vector<AgentId> honest) {
  Roster r;
  r.n = n;
  r.honest = std::move(honest);
  std::sort(r.honest.begin(), r.honest.end());
  r.validate();
  return r;
}

bool Roster::is_honest(AgentId a) const {
  return std::binary_search(honest.begin(), honest.end(), a);
}

std::vector<AgentId> Roster::malicious() const {
  std::vector<AgentId> m;
  for (AgentId a = 1; a <= n; ++a)
    if (!is_honest(a)) m.push_back(a);
  return m;
}

void Roster::validate() const {
  if (n < 1) throw std::invalid_argument("roster needs at least one agent");
  if (honest.empty()) throw std::invalid_argument("at least one honest agent required");
  if (std::adjacent_find(honest.begin(), honest.end()) != honest.end())
    throw std::invalid_argument("duplicate honest agent index");
  for (AgentId a : honest)
    if (a < 1 || a > n) throw std::invalid_argument("honest index out of range");
}

void Transcript::write_jsonl(std::ostream& os) const {
  for (const ChannelMessage& m : messages) {
    nlohmann::json j;
    j["seq"] = m.seq;
    j["phase"] = m.phase;
    j["from"] = m.from;
    j["to"] = m.to;
    j["bits"] = m.payload;
    os << j.dump() << '\n';
  }
}

std::vector<ChannelMessage> Transcript::visible_to(AgentId a) const {
  std::vector<ChannelMessage> out;
  for (const ChannelMessage& m : messages)
    if (m.to == a || m.to == kBroadcast || m.from == a) out.push_back(m);
  return out;
}

std::vector<Ordering> default_orderings(int n) {
  std::vector<Ordering> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int t = 1; t <= n; ++t) {
    Ordering o;
    for (int i = 1; i <= n; ++i) o.sequence.push_back((t + i - 1) % n + 1);
    out.push_back(std::move(o));
  }
  return out;
}

Ordering identity_ordering(int n) {
  Ordering o;
  for (int i = 1; i <= n; ++i) o.sequence.push_back(i);
  return o;
}

Fabric::Fabric(Roster roster, bool capture_transcript)
    : roster_(std::move(roster)), capture_(capture_transcript) {
  roster_.validate();
}

void Fabric::check_agent(AgentId a) const {
  if (a < 1 || a > roster_.n) throw std::invalid_argument("unknown agent");
}

void Fabric::log(AgentId from, AgentId to, int bit) {
  ++seq_;
  if (!capture_) return;
  transcript_.messages.push_back(
      {seq_, phase_, from, to, bit ? "1" : "0"});
}

void Fabric::send_private(AgentId from, AgentId to, int bit) {
  check_agent(from);
  check_agent(to);
  log(from, to, bit);
}

std::vector<std::pair<AgentId, int>> Fabric::broadcast_ordered(
    const Ordering& ordering, std::span<const int> bits, const HookMap& hooks,
    std::optional<AgentId> skip) {
  if (ordering.sequence.size() != static_cast<std::size_t>(roster_.n))
    throw std::invalid_argument("ordering must cover every agent");
  std::vector<std::pair<AgentId, int>> revealed;
  for (AgentId a : ordering.sequence) {
    check_agent(a);
    if (skip && *skip == a) continue;
    int bit;
    if (auto it = hooks.find(a); it != hooks.end()) {
      bit = it->second(a, std::span<const std::pair<AgentId, int>>(revealed));
    } else {
      if (static_cast<std::size_t>(a) >= bits.size())
        throw std::invalid_argument("missing announcement bit");
      bit = bits[static_cast<std::size_t>(a)];
    }
    log(a, kBroadcast, bit);
    revealed.emplace_back(a, bit);
  }
  return revealed;
}

std::vector<std::pair<AgentId, int>> Fabric::broadcast_simultaneous(
    std::span<const int> bits, const HookMap& hooks, std::optional<AgentId> skip) {
  // Commit-then-reveal: every bit is fixed before anything becomes visible,
  // so hooks receive an empty prefix.
  std::vector<std::pair<AgentId, int>> committed;
  for (AgentId a = 1; a <= roster_.n; ++a) {
    if (skip && *skip == a) continue;
    int bit;
    if (auto it = hooks.find(a); it != hooks.end()) {
      bit = it->second(a, {});
    } else {
      if (static_cast<std::size_t>(a) >= bits.size())
        throw std::invalid_argument("missing announcement bit");
      bit = bits[static_cast<std::size_t>(a)];
    }
    committed.emplace_back(a, bit);
  }
  for (auto& [a, bit] : committed) log(a, kBroadcast, bit);
  return committed;
}

}  // namespace anonq::net
