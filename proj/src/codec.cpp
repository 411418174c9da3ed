#include "tiercrypt/codec.hpp"

#include <array>
#include <cstdint>

namespace tiercrypt {

namespace {

// 4B/5B substitution block code, nibble index -> 5-bit symbol.
const std::array<const char*, 16> k4b5b = {
    "11110", "01001", "10100", "10101", "01010", "01011", "01110", "01111",
    "10010", "10011", "10110", "10111", "11010", "11011", "11100", "11101",
};

char flip(char level) { return level == '+' ? '-' : '+'; }

bool is_pulse(char c) { return c == '+' || c == '-'; }

void check_bits(const std::string& bits) {
  for (char c : bits)
    if (c != '0' && c != '1')
      throw Error(ErrorCode::ERR_BAD_DIGIT, std::string("'") + c + "' is not a bit");
}

[[noreturn]] void bad_waveform(const std::string& what) {
  throw Error(ErrorCode::ERR_INVALID_WAVEFORM, what);
}

struct LevelIo {
  char level;
  explicit LevelIo(char initial) : level(initial) {}
};

std::string encode_two_level(const std::string& bits, const CodecSpec& spec) {
  std::string out;
  switch (spec.scheme) {
    case Scheme::NRZ_L:
      out.reserve(bits.size());
      for (char b : bits) out.push_back(b == '1' ? '+' : '-');
      break;
    case Scheme::NRZ_I: {
      char level = *spec.initial_level;
      out.reserve(bits.size());
      for (char b : bits) {
        if (b == '1') level = flip(level);
        out.push_back(level);
      }
      break;
    }
    case Scheme::MANCHESTER:
      // 1 = low->high, 0 = high->low
      out.reserve(bits.size() * 2);
      for (char b : bits) {
        if (b == '1') { out.push_back('-'); out.push_back('+'); }
        else          { out.push_back('+'); out.push_back('-'); }
      }
      break;
    case Scheme::DIFF_MANCHESTER: {
      // 0 = transition at cell start, 1 = none; always a mid-cell transition.
      char prev = *spec.initial_level;
      out.reserve(bits.size() * 2);
      for (char b : bits) {
        char first = (b == '0') ? flip(prev) : prev;
        char second = flip(first);
        out.push_back(first);
        out.push_back(second);
        prev = second;
      }
      break;
    }
    default: break;
  }
  return out;
}

std::string decode_two_level(const std::string& sym, const CodecSpec& spec) {
  for (char c : sym)
    if (!is_pulse(c)) bad_waveform("zero level is not valid in a two-level scheme");
  std::string out;
  switch (spec.scheme) {
    case Scheme::NRZ_L:
      out.reserve(sym.size());
      for (char c : sym) out.push_back(c == '+' ? '1' : '0');
      break;
    case Scheme::NRZ_I: {
      char prev = *spec.initial_level;
      out.reserve(sym.size());
      for (char c : sym) {
        out.push_back(c != prev ? '1' : '0');
        prev = c;
      }
      break;
    }
    case Scheme::MANCHESTER: {
      if (sym.size() % 2 != 0) bad_waveform("odd symbol count, bit cells are 2 symbols");
      out.reserve(sym.size() / 2);
      for (std::size_t i = 0; i < sym.size(); i += 2) {
        if (sym[i] == '-' && sym[i + 1] == '+') out.push_back('1');
        else if (sym[i] == '+' && sym[i + 1] == '-') out.push_back('0');
        else bad_waveform("bit cell without mid-cell transition");
      }
      break;
    }
    case Scheme::DIFF_MANCHESTER: {
      if (sym.size() % 2 != 0) bad_waveform("odd symbol count, bit cells are 2 symbols");
      char prev = *spec.initial_level;
      out.reserve(sym.size() / 2);
      for (std::size_t i = 0; i < sym.size(); i += 2) {
        if (sym[i + 1] != flip(sym[i])) bad_waveform("bit cell without mid-cell transition");
        out.push_back(sym[i] == prev ? '1' : '0');
        prev = sym[i + 1];
      }
      break;
    }
    default: break;
  }
  return out;
}

// AMI and pseudoternary share one mark-alternating kernel; `mark` selects the
// bit that produces a pulse.
std::string encode_alternating(const std::string& bits, char mark, char initial_polarity) {
  std::string out;
  out.reserve(bits.size());
  char last = flip(initial_polarity);
  for (char b : bits) {
    if (b == mark) {
      last = flip(last);
      out.push_back(last);
    } else {
      out.push_back('0');
    }
  }
  return out;
}

std::string decode_alternating(const std::string& sym, char mark, char initial_polarity) {
  std::string out;
  out.reserve(sym.size());
  char last = flip(initial_polarity);
  for (char c : sym) {
    if (c == '0') {
      out.push_back(mark == '1' ? '0' : '1');
    } else {
      if (c != flip(last)) bad_waveform("consecutive pulses with the same polarity");
      last = c;
      out.push_back(mark);
    }
  }
  return out;
}

std::string encode_b8zs(const std::string& bits, char initial_polarity) {
  std::string out;
  out.reserve(bits.size());
  char last = flip(initial_polarity);
  std::size_t zeros = 0;
  for (char b : bits) {
    if (b == '0') {
      if (++zeros == 8) {
        // 000VB0VB: V repeats the previous pulse, B opposes it. The final B
        // restores the running polarity, so `last` is unchanged.
        out += "000";
        out.push_back(last);
        out.push_back(flip(last));
        out.push_back('0');
        out.push_back(flip(last));
        out.push_back(last);
        zeros = 0;
      }
    } else {
      out.append(zeros, '0');
      zeros = 0;
      last = flip(last);
      out.push_back(last);
    }
  }
  out.append(zeros, '0');
  return out;
}

std::string decode_b8zs(const std::string& sym, char initial_polarity) {
  std::string out;
  out.reserve(sym.size());
  char last = flip(initial_polarity);
  std::size_t zero_run = 0; // consecutive zero symbols not consumed by a substitution
  for (std::size_t i = 0; i < sym.size(); ++i) {
    char c = sym[i];
    if (c == '0') {
      if (++zero_run == 8) bad_waveform("eight plain zeros, encoder would have substituted");
      out.push_back('0');
      continue;
    }
    if (c == flip(last)) { // ordinary mark
      last = c;
      zero_run = 0;
      out.push_back('1');
      continue;
    }
    // Polarity violation: only legal as the V of 000VB0VB.
    if (zero_run < 3) bad_waveform("polarity violation without three leading zeros");
    if (i + 4 >= sym.size()) bad_waveform("truncated substitution pattern");
    if (sym[i + 1] != flip(c) || sym[i + 2] != '0' || sym[i + 3] != flip(c) || sym[i + 4] != c)
      bad_waveform("malformed substitution pattern");
    out.append(5, '0'); // VB0VB; the preceding 000 already decoded as zeros
    last = sym[i + 4];
    zero_run = 0;
    i += 4;
  }
  return out;
}

} // namespace

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::B4B5: return "B4B5";
    case Scheme::NRZ_L: return "NRZ_L";
    case Scheme::NRZ_I: return "NRZ_I";
    case Scheme::MANCHESTER: return "MANCHESTER";
    case Scheme::DIFF_MANCHESTER: return "DIFF_MANCHESTER";
    case Scheme::AMI: return "AMI";
    case Scheme::PSEUDOTERNARY: return "PSEUDOTERNARY";
    case Scheme::B8ZS: return "B8ZS";
  }
  return "?";
}

std::optional<Scheme> scheme_from_name(const std::string& name) {
  for (Scheme s : {Scheme::B4B5, Scheme::NRZ_L, Scheme::NRZ_I, Scheme::MANCHESTER,
                   Scheme::DIFF_MANCHESTER, Scheme::AMI, Scheme::PSEUDOTERNARY, Scheme::B8ZS})
    if (name == scheme_name(s)) return s;
  return std::nullopt;
}

void validate_codec_spec(const CodecSpec& spec) {
  bool wants_level =
      spec.scheme == Scheme::NRZ_I || spec.scheme == Scheme::DIFF_MANCHESTER;
  bool wants_polarity = spec.scheme == Scheme::AMI || spec.scheme == Scheme::PSEUDOTERNARY ||
                        spec.scheme == Scheme::B8ZS;
  if (spec.initial_level.has_value() != wants_level)
    throw Error(ErrorCode::ERR_BAD_SPEC,
                std::string(scheme_name(spec.scheme)) +
                    (wants_level ? " requires initial_level" : " takes no initial_level"));
  if (spec.initial_polarity.has_value() != wants_polarity)
    throw Error(ErrorCode::ERR_BAD_SPEC,
                std::string(scheme_name(spec.scheme)) +
                    (wants_polarity ? " requires initial_polarity" : " takes no initial_polarity"));
  if (spec.initial_level && !is_pulse(*spec.initial_level))
    throw Error(ErrorCode::ERR_BAD_SPEC, "initial_level must be '+' or '-'");
  if (spec.initial_polarity && !is_pulse(*spec.initial_polarity))
    throw Error(ErrorCode::ERR_BAD_SPEC, "initial_polarity must be '+' or '-'");
}

std::string encode_4b5b(const std::string& bits) {
  check_bits(bits);
  if (bits.size() % 4 != 0)
    throw Error(ErrorCode::ERR_UNALIGNED, "4B/5B input length must be a multiple of 4");
  std::string out;
  out.reserve(bits.size() / 4 * 5);
  for (std::size_t i = 0; i < bits.size(); i += 4) {
    unsigned nibble = 0;
    for (std::size_t j = 0; j < 4; ++j) nibble = nibble << 1 | unsigned(bits[i + j] - '0');
    out += k4b5b[nibble];
  }
  return out;
}

std::string decode_4b5b(const std::string& bits) {
  check_bits(bits);
  if (bits.size() % 5 != 0)
    throw Error(ErrorCode::ERR_UNALIGNED, "4B/5B symbol stream length must be a multiple of 5");
  std::string out;
  out.reserve(bits.size() / 5 * 4);
  for (std::size_t i = 0; i < bits.size(); i += 5) {
    const std::string group = bits.substr(i, 5);
    int nibble = -1;
    for (int v = 0; v < 16; ++v)
      if (group == k4b5b[v]) { nibble = v; break; }
    if (nibble < 0)
      throw Error(ErrorCode::ERR_INVALID_SYMBOL, group + " is not a 4B/5B symbol");
    for (int j = 3; j >= 0; --j) out.push_back(nibble >> j & 1 ? '1' : '0');
  }
  return out;
}

std::string line_encode(const std::string& bits, const CodecSpec& spec) {
  if (spec.scheme == Scheme::B4B5)
    throw Error(ErrorCode::ERR_BAD_SPEC, "B4B5 is a block code, not a line scheme");
  validate_codec_spec(spec);
  check_bits(bits);
  switch (spec.scheme) {
    case Scheme::AMI:
      return encode_alternating(bits, '1', *spec.initial_polarity);
    case Scheme::PSEUDOTERNARY:
      return encode_alternating(bits, '0', *spec.initial_polarity);
    case Scheme::B8ZS:
      return encode_b8zs(bits, *spec.initial_polarity);
    default:
      return encode_two_level(bits, spec);
  }
}

std::string line_decode(const std::string& symbols, const CodecSpec& spec) {
  if (spec.scheme == Scheme::B4B5)
    throw Error(ErrorCode::ERR_BAD_SPEC, "B4B5 is a block code, not a line scheme");
  validate_codec_spec(spec);
  for (char c : symbols)
    if (c != '+' && c != '-' && c != '0') bad_waveform(std::string("'") + c + "' is not a symbol");
  switch (spec.scheme) {
    case Scheme::AMI:
      return decode_alternating(symbols, '1', *spec.initial_polarity);
    case Scheme::PSEUDOTERNARY:
      return decode_alternating(symbols, '0', *spec.initial_polarity);
    case Scheme::B8ZS:
      return decode_b8zs(symbols, *spec.initial_polarity);
    default:
      return decode_two_level(symbols, spec);
  }
}

std::string symbols_to_bits(const std::string& symbols) {
  std::string out;
  out.reserve(symbols.size() * 2);
  for (char c : symbols) {
    switch (c) {
      case '+': out += "01"; break;
      case '0': out += "00"; break;
      case '-': out += "10"; break;
      default:
        throw Error(ErrorCode::ERR_INVALID_SYMBOL, std::string("'") + c + "' is not a symbol");
    }
  }
  return out;
}

std::string bits_to_symbols(const std::string& bits) {
  check_bits(bits);
  if (bits.size() % 2 != 0)
    throw Error(ErrorCode::ERR_INVALID_PAIR, "odd bit count, symbols are 2-bit pairs");
  std::string out;
  out.reserve(bits.size() / 2);
  for (std::size_t i = 0; i < bits.size(); i += 2) {
    char a = bits[i], b = bits[i + 1];
    if (a == '0' && b == '1') out.push_back('+');
    else if (a == '0' && b == '0') out.push_back('0');
    else if (a == '1' && b == '0') out.push_back('-');
    else throw Error(ErrorCode::ERR_INVALID_PAIR, "pair \"11\" has no symbol");
  }
  return out;
}

} // namespace tiercrypt
