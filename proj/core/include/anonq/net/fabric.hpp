#pragma once

#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace anonq::net {

/// Agents are indexed 1..n.
using AgentId = int;
inline constexpr AgentId kBroadcast = 0;

struct Roster {
  int n = 0;
  std::vector<AgentId> honest;  // ascending

  static Roster all_honest(int n);
  static Roster with_honest(int n, std::vector<AgentId> honest);

  bool is_honest(AgentId a) const;
  int honest_count() const { return static_cast<int>(honest.size()); }
  std::vector<AgentId> malicious() const;
  void validate() const;  // unique indices in range, at least one honest
};

struct ChannelMessage {
  int seq = 0;
  std::string phase;
  AgentId from = 0;
  AgentId to = 0;  // kBroadcast for broadcasts
  std::string payload;
};

struct Transcript {
  std::vector<ChannelMessage> messages;

  /// One JSON object per line.
  void write_jsonl(std::ostream& os) const;
  /// Messages an agent could have observed: own sends, messages addressed
  /// to it, and broadcasts.
  std::vector<ChannelMessage> visible_to(AgentId a) const;
};

/// A broadcast order over all agents.
struct Ordering {
  std::vector<AgentId> sequence;
  AgentId last() const { return sequence.back(); }
};

/// The n rotations (t+1, t+2, ..., t); ordering t puts agent t last, so the
/// n orderings have pairwise distinct last participants.
std::vector<Ordering> default_orderings(int n);
Ordering identity_ordering(int n);

/// An announcement hook lets a malicious agent pick its bit after seeing
/// whatever the channel has already revealed this round (nothing, for the
/// simultaneous channel).
using AnnounceHook =
    std::function<int(AgentId self, std::span<const std::pair<AgentId, int>> seen)>;
using HookMap = std::map<AgentId, AnnounceHook>;

/// Deterministic in-process message fabric: private pairwise channels plus
/// ordered and (emulated, commit-then-reveal) simultaneous broadcast. One
/// fabric per protocol run; runs with independent fabrics and rngs may
/// execute concurrently.
class Fabric {
 public:
  explicit Fabric(Roster roster, bool capture_transcript = false);

  const Roster& roster() const { return roster_; }
  int n() const { return roster_.n; }
  bool capturing() const { return capture_; }
  Transcript& transcript() { return transcript_; }
  const Transcript& transcript() const { return transcript_; }

  void set_phase(std::string phase) { phase_ = std::move(phase); }

  /// Private channel; self-delivery is allowed.
  void send_private(AgentId from, AgentId to, int bit);

  /// Reveals bits sequentially in the given order. Agents present in
  /// `hooks` choose their bit via the hook after seeing all earlier
  /// announcements; everyone else announces bits[agent]. Agents in `skip`
  /// do not announce. Returns the announcements in reveal order.
  std::vector<std::pair<AgentId, int>> broadcast_ordered(
      const Ordering& ordering, std::span<const int> bits,
      const HookMap& hooks = {}, std::optional<AgentId> skip = std::nullopt);

  /// All bits commit before any reveal: hooks see an empty prefix.
  std::vector<std::pair<AgentId, int>> broadcast_simultaneous(
      std::span<const int> bits, const HookMap& hooks = {},
      std::optional<AgentId> skip = std::nullopt);

 private:
  void check_agent(AgentId a) const;
  void log(AgentId from, AgentId to, int bit);

  Roster roster_;
  bool capture_;
  int seq_ = 0;
  std::string phase_;
  Transcript transcript_;
};

}  // namespace anonq::net
