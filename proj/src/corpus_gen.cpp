// Copyright 2026 The roslu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "roslu/data/corpus_gen.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "roslu/data/corpus.hpp"
#include "roslu/error.hpp"
#include "roslu/tensor/rng.hpp"

namespace roslu {

namespace {

using Lex = std::vector<const char*>;

const Lex kArtists = {
    "nina simone",     "miles davis",   "the black keys", "billie holiday",
    "arctic monkeys",  "john coltrane", "ella fitzgerald", "daft punk",
    "otis redding",    "janis joplin",  "sun ra",          "the velvet underground",
    "chet baker",      "patti smith",   "fela kuti",       "bjork",
};

const Lex kTracks = {
    "blue in green",  "paranoid android", "take five",      "strange fruit",
    "midnight city",  "karma police",     "so what",        "golden hour",
    "lonely avenue",  "harvest moon",     "night train",    "fast car",
    "river man",      "pink moon",        "cold sweat",     "green light",
};

const Lex kCities = {
    "paris",   "berlin",      "tokyo",        "oslo",
    "madrid",  "new york",    "cape town",    "san francisco",
    "lisbon",  "prague",      "buenos aires", "hong kong",
    "nairobi", "montreal",
};

const Lex kWhens = {
    "today",        "tomorrow",   "tonight",     "this evening",
    "next friday",  "on sunday",  "at noon",     "this weekend",
};

const Lex kCuisines = {
    "italian", "japanese", "mexican", "ethiopian",
    "french",  "korean",   "greek",   "turkish",
};

const Lex kVenues = {
    "blue hill",        "casa lola",    "noodle house", "city tavern",
    "the iron kettle",  "mama rosa",    "golden spoon", "little harbor",
};

const Lex kParties = {"two", "three", "four", "five", "six", "seven", "eight"};

// Slot placeholders are uppercase words inside the template strings.
struct Template {
  const char* intent;
  const char* text;
};

const std::vector<Template> kTemplates = {
    {"play_music", "play TRACK by ARTIST"},
    {"play_music", "please play TRACK by ARTIST"},
    {"play_music", "put on some music by ARTIST"},
    {"play_music", "i want to listen to TRACK"},
    {"play_music", "play the song TRACK"},
    {"play_music", "can you play something by ARTIST"},
    {"play_music", "start TRACK again"},
    {"play_music", "add TRACK by ARTIST to my queue"},
    {"get_weather", "what is the weather like in CITY WHEN"},
    {"get_weather", "will it rain in CITY WHEN"},
    {"get_weather", "how hot will it get in CITY WHEN"},
    {"get_weather", "give me the forecast for CITY"},
    {"get_weather", "do i need an umbrella in CITY WHEN"},
    {"get_weather", "is it windy in CITY right now"},
    {"book_restaurant", "book a table for PARTY at VENUE WHEN"},
    {"book_restaurant", "reserve a CUISINE restaurant in CITY WHEN"},
    {"book_restaurant", "find me a CUISINE place in CITY"},
    {"book_restaurant", "i would like to eat at VENUE WHEN"},
    {"book_restaurant", "get me a reservation at VENUE in CITY"},
    {"book_restaurant", "book dinner for PARTY people at VENUE"},
    {"smalltalk", "thank you very much"},
    {"smalltalk", "that is all for now"},
    {"smalltalk", "never mind please stop"},
    {"smalltalk", "what can you do"},
    {"smalltalk", "cancel the last request"},
};

const std::map<std::string, std::pair<const Lex*, const char*>> kSlots = {
    {"TRACK", {&kTracks, "track"}},
    {"ARTIST", {&kArtists, "artist"}},
    {"CITY", {&kCities, "city"}},
    {"WHEN", {&kWhens, "timeframe"}},
    {"CUISINE", {&kCuisines, "cuisine"}},
    {"VENUE", {&kVenues, "venue"}},
    {"PARTY", {&kParties, "party_size"}},
};

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

}  // namespace

std::vector<RawExample> generate_sentences(int n, uint64_t seed,
                                           uint64_t stream) {
  Rng root(seed, stream);
  std::vector<RawExample> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    Rng rng = root.fork(static_cast<uint64_t>(i));
    const auto& tpl = kTemplates[rng.uniform_int(kTemplates.size())];
    RawExample ex;
    ex.id = std::to_string(i);
    for (const auto& piece : split_ws(tpl.text)) {
      auto slot = kSlots.find(piece);
      if (slot == kSlots.end()) {
        ex.tokens.push_back(piece);
        ex.bio_tags.push_back("O");
        continue;
      }
      const auto& [lex, label] = slot->second;
      const auto value = split_ws((*lex)[rng.uniform_int(lex->size())]);
      for (size_t k = 0; k < value.size(); ++k) {
        ex.tokens.push_back(value[k]);
        ex.bio_tags.push_back((k == 0 ? "B-" : "I-") + std::string(label));
      }
    }
    ex.domain = Domain::Clean;
    out.push_back(std::move(ex));
  }
  return out;
}

void generate_sample_corpus(const std::filesystem::path& out_root,
                            const CorpusGenConfig& cfg) {
  struct Split {
    const char* name;
    int n;
    uint64_t stream;
  };
  const Split splits[] = {{"train", cfg.n_train, 1},
                          {"valid", cfg.n_valid, 2},
                          {"test", cfg.n_test, 3}};
  for (const auto& s : splits) {
    auto examples = generate_sentences(s.n, cfg.seed, s.stream);
    const auto dir = out_root / s.name;
    write_split(dir, examples);
    // intent labels, one per line, same order
    Rng root(cfg.seed, s.stream);
    std::ofstream flabel(dir / "label", std::ios::binary);
    if (!flabel) throw IoError("cannot write " + (dir / "label").string());
    for (int i = 0; i < s.n; ++i) {
      Rng rng = root.fork(static_cast<uint64_t>(i));
      flabel << kTemplates[rng.uniform_int(kTemplates.size())].intent << "\n";
    }
  }
}

}  // namespace roslu
