#include "ntwfsm/machine.hpp"

namespace ntwfsm {

std::vector<bool> input_tape_mask(std::size_t arity, const TapeList& input_tapes) {
  if (input_tapes.empty()) throw Error(ErrorCode::InvalidArgument, "no input tapes given");
  std::vector<bool> mask(arity, false);
  for (std::size_t tape : input_tapes) {
    if (tape >= arity)
      throw Error(ErrorCode::InvalidArgument,
                  "input tape " + std::to_string(tape + 1) + " exceeds arity " + std::to_string(arity));
    if (mask[tape]) throw Error(ErrorCode::InvalidArgument, "input tape " + std::to_string(tape + 1) + " listed twice");
    mask[tape] = true;
  }
  return mask;
}

bool is_epsilon_move(const Label& label, const std::vector<bool>& input_mask) {
  for (std::size_t tape = 0; tape < label.size() && tape < input_mask.size(); ++tape)
    if (input_mask[tape] && !label[tape].is_epsilon()) return false;
  return true;
}

}  // namespace ntwfsm
