/**
 * Orchestrates a session: debounced parameter changes issue transfer
 * requests; only the newest response ever reaches the view. DOM-free so
 * the whole flow is unit-testable; main.ts supplies a View backed by the
 * real page.
 */

import { TransferResult, buildTransferForm, postTransfer } from "./api.js";
import { DEBOUNCE_MS, Debounced, Scheduler, debounce } from "./debounce.js";
import { ResponseSequencer } from "./sequencer.js";
import { SessionState } from "./session.js";

export interface View {
  renderResult(result: TransferResult, seq: number): void;
  renderError(message: string): void;
  setBusy(busy: boolean): void;
}

export type TransferFn = typeof postTransfer;

export class StudioController {
  readonly session = new SessionState();
  private readonly sequencer = new ResponseSequencer();
  private readonly debouncedRequest: Debounced<[]>;

  constructor(
    private readonly view: View,
    private readonly transferFn: TransferFn = postTransfer,
    private readonly baseUrl = "",
    debounceMs: number = DEBOUNCE_MS,
    scheduler?: Scheduler,
  ) {
    this.debouncedRequest = debounce(
      () => void this.requestTransfer(),
      debounceMs,
      scheduler,
    );
  }

  /** Slider drags land here; bursts collapse into one request. */
  parametersChanged(): void {
    if (!this.session.readyToTransfer) return;
    this.debouncedRequest();
  }

  /** The explicit "apply" button: fire now, skipping the debounce window. */
  applyNow(): void {
    if (!this.session.readyToTransfer) return;
    if (this.debouncedRequest.pending) {
      this.debouncedRequest.flush();
    } else {
      void this.requestTransfer();
    }
  }

  async requestTransfer(): Promise<void> {
    const { session } = this;
    if (!session.readyToTransfer || session.inputFiles === null) return;
    const reference =
      session.referenceId !== null
        ? { id: session.referenceId }
        : { files: session.referenceFiles! };

    const seq = this.sequencer.issue();
    session.requestInFlight = true;
    this.view.setBusy(true);
    try {
      const form = buildTransferForm(session.params, session.inputFiles, reference);
      const result = await this.transferFn(form, this.baseUrl);
      if (this.sequencer.tryRender(seq)) {
        session.lastResult = {
          url: "",
          sha256: result.sha256,
          timings: result.timings,
          seq,
        };
        this.view.renderResult(result, seq);
      }
    } catch (err) {
      if (this.sequencer.tryRender(seq)) {
        this.view.renderError(err instanceof Error ? err.message : String(err));
      }
    } finally {
      session.requestInFlight = this.sequencer.inFlight;
      this.view.setBusy(session.requestInFlight);
    }
  }
}
