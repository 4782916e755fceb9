#ifndef QRUMIN_TESTHOOKS_HPP
#define QRUMIN_TESTHOOKS_HPP

#include <atomic>

namespace qrumin::testhooks {

// Single-term mutations used only by the harness sensitivity check.  Each id
// flips one sign or coefficient at one formula site; production runs use
// kNone.  Set once before a suite run, never concurrently with it.
enum Mutation : int {
  kNone = 0,
  kSchoutenFactor = 1,      // R/5 instead of R/6 in the Schouten tensor
  kLeeFormSign = 2,         // +iE instead of -iE
  kMidDbTorsionSign = 3,    // -iA term in the mid-degree del_b frame formula
  kDLeeCoefficient = 4,     // 3*lee instead of 2*lee in the operator scripty-D
  kHodgeSign11 = 5,         // +1 instead of -1 on the (1,1) Hodge diagonal
  kDbbarAdjointSign = 6,    // sign flip in the frame formula for dbbar*
  kRwedgeDropTerm = 7,      // drop one term in the closed-form (1,1)x(1,1) product
  kQfhCoefficient = 8,      // 3*Re instead of 2*Re in the Q_FH frame scalar
  kD0MidCoefficient = 9,    // doubled second-derivative term in frame del_0
  kQ01LeeTermSign = 10,     // + instead of - on the lee correction in Q_01
  kMutationCount = 11,
};

inline std::atomic<int>& slot() {
  static std::atomic<int> v{0};
  return v;
}
inline void set(int m) { slot().store(m, std::memory_order_relaxed); }
inline bool on(Mutation m) {
  return slot().load(std::memory_order_relaxed) == int(m);
}

}  // namespace qrumin::testhooks

#endif
