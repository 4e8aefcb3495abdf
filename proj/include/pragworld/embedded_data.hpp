// Data files compiled into the library.
#pragma once

namespace pragworld::embedded {

extern const char* const kGoalTemplates;
extern const char* const kLexicon;

}  // namespace pragworld::embedded
