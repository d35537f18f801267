#include <stdio.h>
#include <string.h>

#include "fibercoh/fibercoh.h"

#define EXPECT(cond)                                          \
  do {                                                        \
    if (!(cond)) {                                            \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      return 1;                                               \
    }                                                         \
  } while (0)

int main(void) {
  fc_session* s = NULL;
  fc_run* r = NULL;
  fc_run_options o;
  char* text = NULL;

  EXPECT(fc_session_parse("ring R base QQ vars x:1\nideal I = (x);", &s) == FC_ERR_PARSE);
  EXPECT(s == NULL);
  EXPECT(fc_last_error_line() == 2);
  EXPECT(strstr(fc_last_error(), "line 2") != NULL);
  EXPECT(fc_session_parse("ring R base QQ vars x:1;\ncmd loci J;", &s) == FC_ERR_UNDECLARED_NAME);
  EXPECT(strcmp(fc_status_name(FC_ERR_UNDECLARED_NAME), "UndeclaredName") == 0);
  EXPECT(fc_session_parse(NULL, &s) == FC_ERR_INVALID_ARGUMENT);

  EXPECT(fc_session_parse("ring R base QQ vars x:1 y:1;\nmodule S = coker [] shifts (0);\n"
                          "fiber h = point();\ncmd invariants S at h;\ncmd ratmap (x, y^2) at h;",
                          &s) == FC_OK);
  EXPECT(fc_session_command_count(s) == 2);
  EXPECT(fc_session_format(s, &text) == FC_OK);
  EXPECT(strncmp(text, "ring R", 6) == 0);
  fc_string_free(text);

  fc_run_options_init(&o);
  o.seed = 3;
  o.threads = 0;
  EXPECT(fc_session_run(s, &o, &r) == FC_ERR_INVALID_ARGUMENT);
  o.threads = 1;
  EXPECT(fc_session_run(s, &o, &r) == FC_OK);
  EXPECT(fc_run_count(r) == 2);
  EXPECT(strcmp(fc_run_file(r, 0), "01_invariants.json") == 0);
  EXPECT(fc_run_ok(r, 0) == 1);
  EXPECT(strstr(fc_run_json(r, 0), "\"depth\": 2") != NULL);
  EXPECT(strstr(fc_run_json(r, 0), "\"seed\": 3") != NULL);
  EXPECT(fc_run_ok(r, 1) == 0);
  EXPECT(fc_run_exit_code(r) != 0);
  EXPECT(fc_run_json(r, 2) == NULL);
  fc_run_free(r);
  fc_session_free(s);
  printf("capi ok (%s)\n", fc_version());
  return 0;
}
